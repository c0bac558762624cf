//! Fixture corpus shared by the golden and acceptance targets.
#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use vml_core::syntax::parse_file;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Runs the binary from the fixture directory.
pub fn vml(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vml"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("vml runs")
}

/// (file, expected exit code) from fixtures/expected.txt.
pub fn expected() -> Vec<(String, i32)> {
    let text = std::fs::read_to_string(fixtures().join("expected.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (f, c) = l.split_once(' ').unwrap();
            (f.to_string(), c.trim().parse().unwrap())
        })
        .collect()
}

pub fn verdict_ok(v: &str) -> bool {
    let num = |s: &str, pre: &str| {
        s.strip_prefix(pre)
            .and_then(|r| r.strip_suffix(')'))
            .is_some_and(|n| n.parse::<u64>().is_ok())
    };
    v == "holds" || v == "fails" || num(v, "holds-bounded(") || num(v, "unknown(")
}

/// Validates `vml --json check` output for `file` against the report schema.
pub fn check_schema(file: &str, code: i32, v: &Value) -> Result<(), String> {
    let err = |m: String| Err(format!("{file}: {m}"));
    let Some(obj) = v.as_object() else {
        return err("not an object".into());
    };
    let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
    keys.sort_unstable();
    if keys != ["errors", "exit", "results"] {
        return err(format!("keys {keys:?}"));
    }
    if v["exit"].as_i64() != Some(i64::from(code)) {
        return err(format!("exit field {}", v["exit"]));
    }
    let Some(errors) = v["errors"].as_array() else {
        return err("errors".into());
    };
    if errors.is_empty() == (code == 3) {
        return err("errors present iff exit 3".into());
    }
    for e in errors {
        // file:line:col: message
        let e = e.as_str().unwrap_or_default();
        let parts: Vec<&str> = e.splitn(4, ':').collect();
        if parts.len() < 4
            || parts[0] != file
            || parts[1].parse::<usize>().is_err()
            || parts[2].parse::<usize>().is_err()
        {
            return err(format!("error without position: {e}"));
        }
    }
    let Some(results) = v["results"].as_array() else {
        return err("results".into());
    };
    for r in results {
        let Some(r) = r.as_object() else {
            return err("result".into());
        };
        if r.get("file").and_then(Value::as_str) != Some(file) {
            return err("result file".into());
        }
        if !r.get("line").and_then(Value::as_u64).is_some_and(|n| n >= 1)
            || !r.get("col").and_then(Value::as_u64).is_some_and(|n| n >= 1)
        {
            return err("result position".into());
        }
        let verdict = r.get("verdict").and_then(Value::as_str).unwrap_or_default();
        if !verdict_ok(verdict) {
            return err(format!("verdict {verdict}"));
        }
        if r.contains_key("reason") != (verdict == "fails") {
            return err("reason present iff fails".into());
        }
        let judgment = r.get("judgment").and_then(Value::as_str).unwrap_or_default();
        if parse_file(judgment).is_err() {
            return err(format!("reprinted judgment does not parse: {judgment}"));
        }
    }
    Ok(())
}
