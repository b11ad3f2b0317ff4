use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twisted")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn temp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("twisted-cli-{}-{name}", std::process::id()))
}

#[test]
fn fold_table_for_2a4() {
    let o = run(&["fold", "A4", "o2"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("folded type: B2 (BC2)"), "{s}");
    assert!(s.contains("long classes: A1^2, short classes: A2"));
    assert!(s.contains("classes: 8 (4 positive)"));
    assert!(s.contains("pair types: a2-ii:4 c-ii:4 d-ii:16"));
}

#[test]
fn fold_json_lists_every_class() {
    let v = json(&["fold", "E6", "o2"]);
    assert_eq!(v["classes"].as_array().unwrap().len(), 48);
}

#[test]
fn commutator_is_checked_against_the_oracle() {
    let o = run(&["comm", "A3", "o2", "gf(9;frob)", "[1,0,0]", "1", "[0,1,0]", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("oracle: ok"));
    let v = json(&["comm", "A3", "o2", "gf(9;frob)", "[1,0,0]", "1", "[0,1,0]", "1"]);
    assert_eq!(v["oracle"], Value::Bool(true));
    assert_eq!(v["pair_type"], "d-i");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["fold", "Q7", "o2"]).status.code(), Some(2));
    assert_eq!(run(&["fold", "A3"]).status.code(), Some(2));
    // a parameter outside R_[a] is a domain error
    let o = run(&["comm", "A3", "o2", "gf(9;frob)", "[1,0,0]", "1", "[0,1,0]", "x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error:"));
    assert_eq!(run(&["fold", "A3", "o2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["fold", "D4", "o3"][..],
        &["certify", "generators", "A4", "o2"],
        &["sweep", "commutators", "D4", "o2", "gf(9;frob)", "--samples", "20", "--cap", "0"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn certify_then_verify() {
    let path = temp("certs.txt");
    let o = run(&["certify", "generators", "A3", "o2"]);
    assert!(o.status.success());
    std::fs::write(&path, &o.stdout).unwrap();
    let p = path.to_str().unwrap();
    for ring in ["gf(9;frob)", "gf(25;frob)", "dual(gf(9;frob);2)"] {
        let v = run(&["verify", p, ring]);
        assert!(v.status.success(), "{ring}: {}", stdout(&v));
        assert!(stdout(&v).contains("verdict: ok"));
    }
    let v = run(&["verify", p, "dual(gf(9;frob);2)", "--gen", "e"]);
    assert!(v.status.success());
    // a tampered certificate must fail
    let text = String::from_utf8(o.stdout).unwrap().replacen("(x [0,-1,0] 1)", "(x [0,-1,0] -1)", 1);
    std::fs::write(&path, text).unwrap();
    let v = run(&["verify", p, "gf(25;frob)"]);
    assert_eq!(v.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweeps_report_ok() {
    let o = run(&["sweep", "commutators", "A3", "o2", "gf(9;frob)", "--rep", "natural"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: ok"));
    let v = json(&["sweep", "conjugation", "A3", "o2", "gf(9;frob)", "--rep", "natural", "--samples", "2"]);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["report"]["failures"], 0);
}

#[test]
fn level_and_utv() {
    let o = run(&["level", "A3", "o2", "dual(gf(9;frob);2)", "(x [1,0,0] e)"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("size: 9"));
    let o = run(&["utv", "A3", "o2", "dual(gf(9;frob);2)", "(conj (x [0,1,0] 1) (x [-1,0,0] e))", "--gen", "e"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn check_ring_reports_conditions() {
    let o = run(&["check-ring", "dual(gf(9;frob);2)"]);
    assert!(o.status.success());
    let v = json(&["check-ring", "gf(9;frob)"]);
    assert!(v.is_object());
}
