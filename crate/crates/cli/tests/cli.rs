use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn monsky(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monsky"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn emit(dir: &Path, name: &str) -> PathBuf {
    let out = monsky(&["corpus", "emit", name]);
    assert!(out.status.success());
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, &out.stdout).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn corpus_list_and_emit() {
    let out = monsky(&["corpus", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let names = json(&out);
    assert!(names.as_array().unwrap().iter().any(|n| n == "ace"));
    let out = monsky(&["corpus", "emit", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("UnknownCorpusEntry"));
}

#[test]
fn monsky_diag1() {
    let dir = TempDir::new().unwrap();
    let f = emit(dir.path(), "diag1");
    let out = monsky(&["monsky", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["p"], "A - B + C - D");
    assert_eq!(r["f"], "A + C");
    assert_eq!(r["f_tilde"], "B + D");
    assert_eq!(r["small"], true);
    assert_eq!(r["obstruction"]["p_at_ones"], "0");
}

#[test]
fn areapoly_ace_in_both_orders() {
    let dir = TempDir::new().unwrap();
    let f = emit(dir.path(), "ace");
    let expected = "A^2 - 2*A*C + 2*A*E + C^2 + 2*C*E + E^2";
    for order in ["grevlex", "lex"] {
        let out = monsky(&["areapoly", s(&f), "--order", order]);
        assert_eq!(out.status.code(), Some(0));
        let r = json(&out);
        assert_eq!(r["p"], expected);
        assert_eq!(r["degree"], 2);
        assert_eq!(r["sign_witness"], "A^2");
    }
}

#[test]
fn order_and_areas() {
    let dir = TempDir::new().unwrap();
    let f = emit(dir.path(), "ace");
    let r = json(&monsky(&["order", s(&f)]));
    assert_eq!(r["dimension"], 7);
    assert_eq!(r["alpha"]["u"], 1);
    assert_eq!(r["alpha"]["v"], 0);
    let r = json(&monsky(&["areas", s(&f)]));
    assert_eq!(r["parameters"].as_array().unwrap().len(), 1);
    assert_eq!(r["areas"].as_array().unwrap().len(), 3);
    let r = json(&monsky(&["areas", s(&f), "--free-corners"]));
    assert_eq!(r["parameters"].as_array().unwrap().len(), 7);
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let f = emit(dir.path(), "diag2");
    assert_eq!(monsky(&["validate", s(&f)]).status.code(), Some(0));

    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&f).unwrap()).unwrap();
    doc["constraints"] = serde_json::json!([{"triangles": ["B", "E"]}, {"triangles": ["E", "F"]}]);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, doc.to_string()).unwrap();
    let out = monsky(&["validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["ok"], false);
    let kinds: Vec<&str> = r["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"overlapping constraint triangle sets"));

    doc["corners"] = serde_json::json!(["p", "q", "r", "s", "u"]);
    fs::write(&bad, doc.to_string()).unwrap();
    let out = monsky(&["validate", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SchemaError"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(monsky(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(monsky(&["sample", "x.json"]).status.code(), Some(2));
    assert_eq!(monsky(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn reducible_is_a_domain_error() {
    let dir = TempDir::new().unwrap();
    let f = emit(dir.path(), "be-split");
    let out = monsky(&["order", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Reducible"));
}

#[test]
fn sample_writes_deterministic_svg() {
    let dir = TempDir::new().unwrap();
    let f = emit(dir.path(), "ace");
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let ra = json(&monsky(&["sample", s(&f), "--seed", "42", "--svg", s(&a)]));
    let rb = json(&monsky(&["sample", s(&f), "--seed", "42", "--svg", s(&b)]));
    assert_eq!(ra, rb);
    let svg = fs::read_to_string(&a).unwrap();
    assert_eq!(svg, fs::read_to_string(&b).unwrap());
    assert_eq!(svg.matches("<polygon").count(), 3 + 3);
    assert!(svg.contains("triangle negative"));
    assert_eq!(ra["is_generic"], true);
    assert_eq!(ra["points"]["p"], serde_json::json!(["0", "0"]));
}

#[test]
fn color_finds_a_rainbow() {
    let dir = TempDir::new().unwrap();
    let f = emit(dir.path(), "diag2");
    let out = monsky(&["color", s(&f), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["rainbow_count"].as_u64().unwrap() % 2, 1);
    assert_eq!(r["colors"]["p"], "C");
    assert_eq!(r["colors"]["q"], "A");
    assert_eq!(r["colors"]["r"], "A");
    assert_eq!(r["colors"]["s"], "B");
    let area = r["rainbow_area"].as_str().unwrap();
    let den: u64 = area.split('/').nth(1).expect("fractional area").parse().unwrap();
    assert_eq!(den % 2, 0);

    let ace = emit(dir.path(), "ace");
    let out = monsky(&["color", s(&ace), "--seed", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NotHonest"));
}

#[test]
fn diagonal_documents_round_trip() {
    let dir = TempDir::new().unwrap();
    let out = monsky(&["diagonal", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("d2.json");
    fs::write(&path, &out.stdout).unwrap();
    let r = json(&monsky(&["order", s(&path)]));
    assert_eq!(r["dimension"], 10);
    assert_eq!(monsky(&["diagonal", "0"]).status.code(), Some(2));
}
