use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zipcone")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn trivial_weight_has_one_section() {
    let v = json(&["h0", "--n", "3", "--p", "2", "--weight=0,0,0"]);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["schema"], "zipcone/1");
}

#[test]
fn sp4_zip_cone_inequalities() {
    let v = json(&["cone", "--name", "zip-sp4", "--p", "2", "--emit", "halfspaces"]);
    assert_eq!(v["inequalities"], serde_json::json!([[-2, -1], [1, -1]]));
}

#[test]
fn f1_section_weight() {
    let v = json(&["verify-section", "--name", "f1sp6", "--p", "2"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["weight"], serde_json::json!([3, -4, -4]));
}

#[test]
fn guard_exits_with_two() {
    let out = run(&["h0", "--n", "3", "--p", "2", "--weight=-2,-2,-6", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("guard"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["cone", "--name", "nonsense", "--p", "2"]).status.code(), Some(1));
    assert_eq!(run(&["h0", "--n", "3", "--p", "4", "--weight=0,0,0"]).status.code(), Some(1));
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["sweep", "--n", "2", "--p", "3", "--box=-4..4", "--compare", "zip-sp4"];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0), "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, run(&args).stdout);
}

#[test]
fn slice_writes_a_csv_polygon() {
    let out = run(&["slice", "--cone", "zip-sp6-sat", "--p", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("u,v,label"));
    assert!(lines.count() >= 3);
}
