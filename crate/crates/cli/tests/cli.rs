use std::process::{Command, Output};

use serde_json::Value;

fn restrix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_restrix")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const IDEMPOTENT_PAIR: &str = r#"{"size": 2, "one": 0, "mul": [[0, 1], [1, 1]]}"#;
const Z2: &str = r#"{"size": 2, "one": 0, "mul": [[0, 1], [1, 0]]}"#;

#[test]
fn munn_reduces_words() {
    let long = stdout_json(&restrix(&["munn", "--expr", "a a' a"]));
    let short = stdout_json(&restrix(&["munn", "--expr", "a"]));
    assert_eq!(long, short);
    assert_eq!(short["end"], "a");
}

#[test]
fn du_outputs_a_projection_pair() {
    let v = stdout_json(&restrix(&["du", "--word", "a b'"]));
    assert_eq!(v["m"], "");
    assert_eq!(v["E"]["end"], "");
}

#[test]
fn enumerate_idempotent_pair() {
    let v = stdout_json(&restrix(&["enumerate", IDEMPOTENT_PAIR, "--relations", "hom"]));
    assert_eq!(v["status"], "closed");
    assert_eq!(v["algebra"]["size"], 3);
    let v = stdout_json(&restrix(&["enumerate", IDEMPOTENT_PAIR, "--relations", "hom", "--inverse"]));
    assert_eq!(v["algebra"]["size"], 2);
}

#[test]
fn enumerate_reports_exceeded() {
    let z3 = r#"{"size": 3, "one": 0, "mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}"#;
    let v = stdout_json(&restrix(&["enumerate", z3, "--relations", "pm", "--bound", "2"]));
    assert_eq!(v["status"], "exceeded");
}

#[test]
fn prefix_expand_and_analyze() {
    let out = restrix(&["prefix-expand", "--group", Z2]);
    let v = stdout_json(&out);
    assert_eq!(v["size"], 3);
    assert_eq!(v["labels"], serde_json::json!(["{0}|0", "{0,1}|0", "{0,1}|1"]));
    let text = String::from_utf8(out.stdout).unwrap();
    let a = stdout_json(&restrix(&["analyze", &text]));
    assert_eq!(a["restriction"], true);
    assert_eq!(a["structure"]["proper"], true);
    assert_eq!(a["structure"]["f_restriction"], true);
}

#[test]
fn check_reports_violations() {
    let bad = r#"{"size": 2, "one": 0, "mul": [[0, 1], [1, 0]], "star": [1, 1], "plus": [0, 0]}"#;
    let v = stdout_json(&restrix(&["check", bad]));
    assert!(!v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn product_from_bundle() {
    let bundle = r#"{"source": {"size": 2, "one": 0, "mul": [[0, 1], [1, 0]]},
        "Y": {"size": 1, "top": 0, "meet": [[0]]},
        "map": [{"dom": [0], "val": [0]}, {"dom": [0], "val": [0]}]}"#;
    let v = stdout_json(&restrix(&["product", bundle]));
    assert_eq!(v["algebra"]["size"], 2);
}

#[test]
fn export_dot_is_stable() {
    let p = String::from_utf8(restrix(&["prefix-expand", "--group", Z2]).stdout).unwrap();
    let a = restrix(&["export-dot", &p, "--what", "order"]);
    let b = restrix(&["export-dot", &p, "--what", "order"]);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.starts_with("digraph order {"));
    assert!(text.contains("1 -> 0;"));
    let c = String::from_utf8(restrix(&["export-dot", &p, "--what", "cayley", "--generators", "2"]).stdout).unwrap();
    assert!(c.contains("2 -> 1 [label=\"{0,1}|1\"];"));
}

#[test]
fn bad_input_exits_2() {
    assert_eq!(restrix(&["check", "{\"size\": 2}"]).status.code(), Some(2));
    assert_eq!(restrix(&["munn", "--expr", "a 1"]).status.code(), Some(2));
    assert_eq!(restrix(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(restrix(&["enumerate", Z2]).status.code(), Some(2));
    let broken = r#"{"source": {"size": 2, "one": 0, "mul": [[0, 1], [1, 0]]},
        "Y": {"size": 1, "top": 0, "meet": [[0]]},
        "map": [{"dom": [0], "val": [0]}, {"dom": [], "val": []}]}"#;
    let out = restrix(&["product", broken]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn verify_default_suite_passes() {
    let out = restrix(&["verify", "--suite", "default", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = 0;
    for line in text.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_ne!(v["status"], "fail", "{line}");
        assert!(v.get("wall_ms").is_none());
        lines += 1;
    }
    assert!(lines > 100);
}
