//! The uniform result record every subcommand produces.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Computed,
    Error,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Yes | Verdict::Computed => 0,
            Verdict::No => 1,
            Verdict::Error => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Computed => "computed",
            Verdict::Error => "error",
        }
    }
}

/// Field order is the serialization order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub data: Value,
    pub skipped: Vec<Value>,
    /// Human-readable body printed without `--json`.
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &str, verdict: Verdict) -> Report {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            verdict,
            witnesses: Vec::new(),
            data: Value::Object(Map::new()),
            skipped: Vec::new(),
            text: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Report {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn with_data(mut self, data: Value) -> Report {
        self.data = data;
        self
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn witness(&mut self, w: Value) {
        self.witnesses.push(w);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.verdict.label());
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness: {}\n", compact(w)));
        }
        for s in &self.skipped {
            out.push_str(&format!("skipped: {}\n", compact(s)));
        }
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
