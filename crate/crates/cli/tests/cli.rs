use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn sample(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples");
    root.join(name).to_string_lossy().into_owned()
}

fn obsgame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_obsgame"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

#[test]
fn parse_prints_term_and_type() {
    let out = obsgame(&["parse", &sample("add_rl.pcf")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["type"], "nat -> nat -> nat");
    assert_eq!(v["plus"], "right-to-left");
}

#[test]
fn syntax_errors_exit_with_two_and_a_position() {
    let out = obsgame(&["parse", &sample("bad.pcf")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1:7"), "{err}");
}

#[test]
fn type_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ill.pcf");
    std::fs::write(&path, "succ (fun x: nat -> x)").unwrap();
    let out = obsgame(&["denote", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_bounds_exit_with_two() {
    let out = obsgame(&["obs", &sample("succ.pcf"), "--max-play-len", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn equiv_reports_equivalence_with_exit_zero() {
    let out = obsgame(&["equiv", &sample("add_lr.pcf"), &sample("add_rl.pcf")]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "EQUIV_AT_BOUNDS");
    assert!(v["witness"].is_null());
}

#[test]
fn equiv_reports_a_witness_with_exit_one() {
    let out = obsgame(&["equiv", &sample("add_lr.pcf"), &sample("proj_left.pcf")]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "INEQUIV");
    assert!(v["witness"]["views"].as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn equiv_rejects_terms_of_different_types() {
    let out = obsgame(&["equiv", &sample("add_lr.pcf"), &sample("succ.pcf")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_agrees_with_obs_comparison() {
    for (a, b, code) in [("add_lr.pcf", "add_rl.pcf", 0), ("add_lr.pcf", "proj_left.pcf", 1)] {
        let out = obsgame(&["equiv", "--oracle", "--max-nat", "2", &sample(a), &sample(b)]);
        assert_eq!(out.status.code(), Some(code), "{a} {b}");
        assert_eq!(json_of(&out)["oracle"]["agreement"], "AGREE");
    }
}

#[test]
fn test_runs_a_set_document() {
    let out = obsgame(&["test", &sample("add_lr.pcf"), "--set", &sample("s_12.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "TOP");
    let out = obsgame(&["test", &sample("proj_left.pcf"), "--set", &sample("s_12.json")]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "BOT");
}

#[test]
fn test_rejects_a_set_on_another_arena() {
    let out = obsgame(&["test", &sample("succ.pcf"), "--set", &sample("s_12.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    for cmd in ["obs", "denote", "traces"] {
        let first = obsgame(&[cmd, &sample("add_twice.pcf")]);
        let second = obsgame(&[cmd, &sample("add_twice.pcf")]);
        assert_eq!(first.status.code(), Some(0), "{cmd}");
        assert_eq!(first.stdout, second.stdout, "{cmd}");
        json_of(&first);
    }
}

#[test]
fn obs_of_omega_is_empty() {
    let v = json_of(&obsgame(&["obs", &sample("omega.pcf")]));
    assert_eq!(v["sets"].as_array().map(Vec::len), Some(0));
}

#[test]
fn traces_can_be_limited_to_complete_plays() {
    let all = json_of(&obsgame(&["traces", &sample("succ.pcf")]));
    let complete = json_of(&obsgame(&["traces", "--complete-only", &sample("succ.pcf")]));
    let n = |v: &Value| v["plays"].as_array().unwrap().len();
    assert!(n(&complete) > 0 && n(&complete) < n(&all));
}

#[test]
fn laws_pass_at_default_bounds() {
    let out = obsgame(&["laws"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["passed"], true);
}
