//! One pass/fail line per acceptance criterion.

use std::path::{Path, PathBuf};
use std::process::Command;

use multicat::workspace::Workspace;
use serde_json::Value;

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> String {
    manifest().join("fixtures").join(name).display().to_string()
}

fn multicat(args: &[&str]) -> (Option<i32>, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_multicat"))
        .args(args)
        .env_remove("MULTICAT_CAP")
        .output()
        .expect("binary runs");
    (
        out.status.code(),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

struct Outcome {
    id: u8,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn corpus_criterion(report: &Value, id: u8, title: &'static str) -> Outcome {
    let Some(c) = report["data"]["criteria"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["id"] == id))
    else {
        return Outcome {
            id,
            title,
            pass: false,
            detail: "missing from corpus report".into(),
        };
    };
    let checked = c["checked"].as_u64().unwrap_or(0);
    let violations = c["violations"].as_u64().unwrap_or(u64::MAX);
    let seconds = c["seconds"].as_f64().unwrap_or(f64::INFINITY);
    let mut pass = checked > 0 && violations == 0;
    let mut detail = format!(
        "{checked} checked, {} skipped, {violations} violations, {seconds:.1}s",
        c["skipped"].as_u64().unwrap_or(0)
    );
    if id == 1 && seconds > 600.0 {
        pass = false;
        detail.push_str(", over the 10 minute budget");
    }
    let first = report["witnesses"]
        .as_array()
        .and_then(|ws| ws.iter().find(|w| w["criterion"] == id))
        .and_then(|w| w["first"].as_str());
    if let Some(w) = first {
        detail.push_str(&format!("; first: {w}"));
    }
    Outcome {
        id,
        title,
        pass,
        detail,
    }
}

fn snapshot(name: &str, args: &[&str], expected_code: i32) -> Result<Value, String> {
    let path = manifest().join("tests/snapshots").join(name);
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let (code, stdout) = multicat(args);
    if code != Some(expected_code) {
        return Err(format!("{name}: exit {code:?}"));
    }
    if stdout != expected {
        return Err(format!("{name}: output differs from snapshot"));
    }
    serde_json::from_str(&stdout).map_err(|e| format!("{name}: {e}"))
}

fn names(v: &Value) -> Vec<&str> {
    v.as_array()
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default()
}

fn v_fixture() -> Result<String, String> {
    let v = fixture("v.mcat");
    let units = snapshot(
        "local_units.json",
        &[
            "-w",
            &v,
            "--json",
            "local-units",
            "-f",
            "U",
            "--base",
            "bot",
        ],
        0,
    )?;
    let under_bot = &units["data"]["units"][0];
    let apexes: Vec<&str> = under_bot["units"]
        .as_array()
        .into_iter()
        .flatten()
        .filter_map(|u| u["apex"].as_str())
        .collect();
    if under_bot["base"] != "bot" || apexes != ["a", "b"] {
        return Err(format!("local units under bot have apexes {apexes:?}"));
    }
    let pi = snapshot(
        "pi_adjunction.json",
        &["-w", &v, "--json", "pi-adjunction", "-f", "U"],
        0,
    )?;
    let l_bot = pi["data"]["left_adjoint"]
        .as_array()
        .and_then(|ls| ls.iter().find(|l| l["object"] == "bot"))
        .map(|l| {
            l["family"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(|m| m["apex"].as_str())
                .collect::<Vec<_>>()
        });
    if l_bot.as_deref() != Some(&["a", "b"][..]) || pi["verdict"] != "yes" {
        return Err(format!("L(bot) = {l_bot:?}"));
    }
    let hom = snapshot(
        "family_hom.json",
        &[
            "-w",
            &v,
            "--json",
            "family-hom",
            "-c",
            "D2",
            "--source",
            "a,b",
            "--target",
            "a",
        ],
        0,
    )?;
    if hom["data"]["count"] != 1 {
        return Err(format!("|hom| = {}", hom["data"]["count"]));
    }
    Ok("two units under bot with apexes a, b; L(bot) = (a, b); one family morphism".into())
}

fn chain_fixture() -> Result<String, String> {
    let chain = fixture("chain3.mcat");
    let fs = snapshot(
        "validate_fs.json",
        &[
            "-w",
            &chain,
            "--json",
            "validate-fs",
            "--left",
            "L",
            "--right",
            "R",
        ],
        0,
    )?;
    if fs["verdict"] != "yes" {
        return Err("validate-fs rejects (L, R)".into());
    }
    let lr = snapshot(
        "classify_lr.json",
        &[
            "-w",
            &chain,
            "--json",
            "classify-lr",
            "--left",
            "L",
            "--right",
            "R",
        ],
        0,
    )?;
    let d = &lr["data"];
    let reflection = d["reflections"]
        .as_array()
        .and_then(|rs| rs.iter().find(|r| r["object"] == "0"))
        .and_then(|r| r["apex"].as_str());
    if names(&d["r_objects"]) != ["1", "2"]
        || names(&d["l_objects"]) != ["2"]
        || reflection != Some("1")
    {
        return Err(format!("unexpected classification {d}"));
    }
    Ok("R-objects {1, 2}, L-objects {2}, 0 reflects to 1".into())
}

fn malformed_inputs() -> Vec<String> {
    let s = |x: &str| x.to_string();
    vec![
        s("category"),
        s("category C"),
        s("category C {"),
        s("category C { objects: a"),
        s("category C { objects: a, }"),
        s("category C { objects a }"),
        s("category { objects: a }"),
        s("categroy C { objects: a }"),
        s("category C { objects: a, b arrows: f : a -> }"),
        s("category C { objects: a, b arrows: f : a b }"),
        s("category C { objects: a, b arrows: f a -> b }"),
        s("category C { objects: a arrows: f : a -> a compose: f . f }"),
        s("category C { objects: a arrows: f : a -> a compose: f . f = }"),
        s("category C { objects: a arrows: f : a -> a compose: f f = f }"),
        s("category C { objects: a } }"),
        s("category C { objects: \"a }"),
        s("category C { objects: a, \"b\\q\" }"),
        s("category C { objects: a = b }"),
        s("category C { objects: a ] }"),
        s("category C { objects: a }\nfunctor F : C -> { obj: a => a }"),
        s("category C { objects: a }\nfunctor F C -> C { obj: a => a }"),
        s("category C { objects: a }\nfunctor F : C -> C { obj: a -> a }"),
        s("category C { objects: a }\nfunctor F : C -> C { obj: a => }"),
        s("category C { objects: a }\nclass K in C { id_a, }"),
        s("category C { objects: a }\nclass K C { id_a }"),
        s("category C { objects: a }\ngamma G in C { cone a [id_a] }"),
        s("category C { objects: a }\ngamma G in C { cone a -> id_a }"),
        s("category C { objects: a }\ngamma G in C { cone a -> [id_a }"),
        s("category C { objects: a }\ndiagram D : C -> C { obj: a => a"),
        s("category C { objects: a, a }"),
        s("category C { objects: a\n  arrows:\n    f : a -> z\n}"),
        s("category C { objects: a, b arrows: f : a -> b, f : a -> b }"),
        s("category C { objects: a arrows: f : a -> a }"),
        s("category C { objects: a arrows: f : a -> a compose: f . f = g }"),
        s("category C { objects: a, b arrows: f : a -> b compose: f . f = f }"),
        s("category C { objects: a arrows: f : a -> a, g : a -> a\n compose: f . f = f  g . g = f  f . g = g  g . f = f }"),
        s("category C { objects: a arrows: id_a : a -> a }"),
        s("category C { objects: a arrows: f : a -> a compose: f . f = f  f . f = id_a }"),
        s("category C { objects: a }\ncategory C { objects: b }"),
        s("category C { objects: a }\nfunctor F : C -> Nope { obj: a => a }"),
        s("category C { objects: a }\nfunctor F : C -> C { obj: a => b }"),
        s("category C { objects: a }\nfunctor F : C -> C { obj: b => a }"),
        s("category C { objects: a, b }\nfunctor F : C -> C { obj: a => a }"),
        s("category C { objects: a, b arrows: f : a -> b }\nfunctor F : C -> C { obj: a => b, b => a mor: f => f }"),
        s("category C { objects: a }\nclass K in C { id_a, g }"),
        s("category C { objects: a }\nclass K in Nope { id_a }"),
        s("category C { objects: a, b arrows: f : a -> b }\ngamma G in C { cone b -> [f] }"),
        s("category C { objects: a }\ngamma G in C { cone z -> [id_a] }"),
        s("category C { objects: a }\ndiagram D : Nope -> C { obj: a => a }"),
        s("category C { objects: a }\nclass K in C { id_a }\nclass K in C { id_a }"),
    ]
}

/// The character at a 1-based position, if any.
fn char_at(text: &str, line: usize, col: usize) -> Option<char> {
    text.split('\n')
        .nth(line.checked_sub(1)?)?
        .chars()
        .nth(col.checked_sub(1)?)
}

fn parser() -> Result<String, String> {
    let mut fixtures = 0;
    let mut dir: Vec<PathBuf> = std::fs::read_dir(manifest().join("fixtures"))
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "mcat") && !p.ends_with("bad.mcat"))
        .collect();
    dir.sort();
    for path in &dir {
        round_trip(path)?;
        fixtures += 1;
    }
    let bad =
        std::fs::read_to_string(manifest().join("fixtures/bad.mcat")).map_err(|e| e.to_string())?;
    let mut inputs = malformed_inputs();
    inputs.push(bad);
    let mut positioned = 0;
    for text in &inputs {
        let result = std::panic::catch_unwind(|| Workspace::parse(text));
        let err = match result {
            Err(_) => return Err(format!("panic on {text:?}")),
            Ok(Ok(_)) => return Err(format!("accepted malformed input {text:?}")),
            Ok(Err(e)) => e,
        };
        let pos = err.pos();
        let ok = if err.token() == "end of input" {
            char_at(text, pos.line, pos.col).is_none()
        } else {
            let at = char_at(text, pos.line, pos.col);
            at.is_some() && (at == err.token().chars().next() || at == Some('"'))
        };
        if !ok {
            return Err(format!(
                "error {err} is not positioned at its token in {text:?}"
            ));
        }
        positioned += 1;
    }
    if positioned < 50 {
        return Err(format!("only {positioned} malformed inputs"));
    }
    Ok(format!(
        "{fixtures} fixtures round-trip, {positioned} malformed inputs give positioned errors"
    ))
}

fn round_trip(path: &Path) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let w = Workspace::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let printed = w.print();
    let back = Workspace::parse(&printed)
        .map_err(|e| format!("{}: reprint fails: {e}", path.display()))?;
    let tables = |w: &Workspace| -> Vec<Vec<(String, String, String)>> {
        w.categories
            .iter()
            .map(|c| {
                c.composition_entries()
                    .into_iter()
                    .map(|(g, f, h)| {
                        (
                            c.mor_name(g).to_string(),
                            c.mor_name(f).to_string(),
                            c.mor_name(h).to_string(),
                        )
                    })
                    .collect()
            })
            .collect()
    };
    if back != w || tables(&back) != tables(&w) || back.print() != printed {
        return Err(format!(
            "{}: round trip changes the workspace",
            path.display()
        ));
    }
    Ok(())
}

#[test]
fn acceptance() {
    let one = fixture("one.mcat");
    let (code, stdout) = multicat(&["-w", &one, "--json", "corpus"]);
    let report: Value = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    let corpus_code = code.unwrap_or(-1);

    let mut outcomes = vec![
        corpus_criterion(&report, 1, "Beck-Chevalley mates are isomorphisms"),
        corpus_criterion(&report, 2, "stable iff local right adjoint"),
        corpus_criterion(&report, 3, "free product extension adjunction"),
        corpus_criterion(&report, 4, "multireflective closure"),
        corpus_criterion(&report, 5, "unit rigidity"),
        corpus_criterion(&report, 6, "local objects theorem"),
    ];
    for (id, title, result) in [
        (7, "V-poset fixture snapshots", v_fixture()),
        (
            8,
            "3-chain factorization fixture snapshots",
            chain_fixture(),
        ),
    ] {
        let (pass, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        outcomes.push(Outcome {
            id,
            title,
            pass,
            detail,
        });
    }
    outcomes.push(corpus_criterion(&report, 9, "orthogonality lemmas"));
    let (pass, detail) = match parser() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    outcomes.push(Outcome {
        id: 10,
        title: "parser round trip and positioned errors",
        pass,
        detail,
    });

    println!();
    println!(
        "corpus: {} categories, {} functors, exit {corpus_code}",
        report["data"]["categories"], report["data"]["functors"]
    );
    for o in &outcomes {
        println!(
            "criterion {:>2}: {} | {} | {}",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.title,
            o.detail
        );
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
