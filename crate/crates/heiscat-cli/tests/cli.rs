use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_heiscat")).args(args).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code().unwrap(), v)
}

#[test]
fn equal_crossing_squared() {
    let (code, v) = run(&["equal", "--charge", "1", "x . x", "id(uu)"]);
    assert_eq!(code, 0);
    assert_eq!(v["equal"], true);
}

#[test]
fn relations_hold_at_charge_zero() {
    let (code, v) = run(&["relations", "--charge", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "verified");
}

#[test]
fn t3_one_one() {
    let (code, v) = run(&["t3", "--m", "1", "--n", "1", "--charge", "1", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "verified");
}

#[test]
fn negative_charge_bubble() {
    let (code, v) = run(&["bubble", "--dots", "0", "--charge", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["charge"], -1);
}

#[test]
fn parse_error_exits_two() {
    let (code, v) = run(&["normalize", "--charge", "1", "x . foo"]);
    assert_eq!(code, 2);
    assert!(v["error"].as_str().unwrap().contains("column 5"));
}

#[test]
fn missing_charge_exits_two() {
    let (code, _) = run(&["invrel"]);
    assert_eq!(code, 2);
}
