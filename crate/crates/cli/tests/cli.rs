use std::process::{Command, Output};

use filtra_core::stability::{poison_extension, replay, Counterexample};
use serde_json::Value;

fn filtra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filtra")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn quotient_reports_order_four_for_p_two() {
    let out = filtra(&["quotient", "--family", "pgamma", "-p", "2", "-i", "1", "-j", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["results"]["order"], 4);
    assert_eq!(v["results"]["d"], 2);
    assert_eq!(v["config"]["p"], 2);
}

#[test]
fn graded_verify_passes() {
    let out = filtra(&["graded", "verify", "-p", "3", "--qmax", "5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn graded_bracket_of_a_and_b_is_d() {
    let out = filtra(&["graded", "bracket", "-p", "3", "-q", "1", "-s", "2", "--x", "1,0,0", "--y", "0,1,0"]);
    let v = json(&out);
    assert_eq!(v["results"]["level"], 3);
    assert_eq!(v["results"]["class"], "0,0,1");
}

#[test]
fn poison_exits_one_and_counterexamples_replay() {
    let out = filtra(&["stability", "--example", "poison", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let failures = v["results"]["suites"][0]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    let ext = poison_extension().unwrap();
    for f in failures {
        let cx: Counterexample = serde_json::from_value(f.clone()).unwrap();
        assert!(replay(&ext, &cx).unwrap());
    }

    let dir = std::env::temp_dir().join(format!("filtra-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("poison.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let rep = filtra(&["replay", "--example", "poison", "--input", path.to_str().unwrap()]);
    assert_eq!(rep.status.code(), Some(0));
    assert_eq!(json(&rep)["passed"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn reports_are_identical_apart_from_timings() {
    let args = ["stability", "--example", "congruence", "--cap", "2", "--count", "60", "--seed", "4"];
    let a = without_timings(json(&filtra(&args)));
    let b = without_timings(json(&filtra(&args)));
    assert_eq!(a, b);
    assert_eq!(a["passed"], true);
}

#[test]
fn rep_prints_conjugation_matrix() {
    let out = filtra(&["rep", "--n", "2", "--mod", "9", "--gamma", "1,3;0,1"]);
    assert_eq!(json(&out)["results"]["matrix"], "1,0,3,0;6,1,0,3;0,0,1,0;0,0,6,1");
}

#[test]
fn output_flag_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("filtra-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fixtures.json");
    let out = filtra(&["--output", path.to_str().unwrap(), "freegroup-fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("freegroup-fixtures: pass"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "freegroup-fixtures");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(filtra(&["quotient", "-p", "3", "-i", "1"]).status.code(), Some(2));
    assert_eq!(filtra(&["stability", "--example", "poison"]).status.code(), Some(2));
    assert_eq!(filtra(&["quotient", "-p", "4", "-i", "1", "-j", "2"]).status.code(), Some(2));
}

#[test]
fn guards_exit_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_filtra"))
        .args(["quotient", "-p", "3", "-i", "1", "-j", "3"])
        .env("FILTRA_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let cap = filtra(&["stability", "--example", "congruence", "--cap", "2", "--sum-max", "3", "--seed", "1"]);
    assert_eq!(cap.status.code(), Some(3));
}

#[test]
fn tight_bound_fails_with_exit_one() {
    let out = filtra(&["p-congruence", "-p", "3", "--jmax", "2", "-e", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["first_failure"], serde_json::json!([0, 1]));
}
