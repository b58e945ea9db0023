//! Workspace language and command-line front end for finite category
//! computations.

pub mod commands;
pub mod dsl;
pub mod report;
pub mod workspace;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser};
use multicat_core::fincat::{Limits, DEFAULT_CAP};
use serde_json::json;

use crate::commands::{execute, Command};
use crate::report::{Report, Verdict};
use crate::workspace::{Workspace, WorkspaceError};

#[derive(Debug, Parser)]
#[command(name = "multicat", version, about = "Finite category computations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Global {
    /// Workspace file; repeat to load several, later files see earlier ones
    #[arg(short = 'w', long = "workspace", global = true)]
    pub workspace: Vec<PathBuf>,
    /// Print the report as JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Size cap for materialized categories
    #[arg(long, global = true, env = "MULTICAT_CAP")]
    pub cap: Option<usize>,
    /// Reserved; every computation is deterministic
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Workspace {
        path: String,
        #[source]
        source: Box<WorkspaceError>,
    },
}

pub fn load(paths: &[PathBuf]) -> Result<Workspace, LoadError> {
    let mut w = Workspace::default();
    for p in paths {
        let path = p.display().to_string();
        let text = std::fs::read_to_string(p).map_err(|source| LoadError::Read {
            path: path.clone(),
            source,
        })?;
        w.extend(&text).map_err(|source| LoadError::Workspace {
            path,
            source: Box::new(source),
        })?;
    }
    Ok(w)
}

/// What a run printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments, runs the command and renders the report. Never panics
/// on bad input; usage errors exit with clap's own code.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            };
        }
    };
    let limits = Limits::with_cap(cli.global.cap.unwrap_or(DEFAULT_CAP));
    let result = load(&cli.global.workspace)
        .map_err(|e| e.to_string())
        .and_then(|w| execute(&cli.command, &w, &limits).map_err(|e| e.to_string()));
    let report = match result {
        Ok(r) => r,
        Err(message) => {
            let mut r = Report::new(cli.command.name(), Verdict::Error)
                .with_data(json!({ "message": message }));
            r.line(format!("error: {message}"));
            r
        }
    };
    let stdout = if cli.global.json {
        report.to_json() + "\n"
    } else {
        report.to_text()
    };
    let stderr = match report.verdict {
        Verdict::Error => format!("{}\n", report.data["message"].as_str().unwrap_or_default()),
        _ => String::new(),
    };
    Outcome {
        stdout,
        stderr,
        code: report.verdict.exit_code(),
    }
}
