use std::process::{Command, Output};

fn stabcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stabcert")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn schubert_of_simple_transposition() {
    let out = stabcert(&["schubert", "--n", "2", "--w", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x1");
}

#[test]
fn schubert_json_terms() {
    let out = stabcert(&["--json", "schubert", "--n", "3", "--w", "3,1,2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["nvars"], 6);
    assert_eq!(v["terms"][0]["exp"], serde_json::json!([2, 0, 0, 0, 0, 0]));
}

#[test]
fn soergel_n3_is_clean() {
    let out = stabcert(&["--json", "verify", "soergel", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let certs = v["certificates"].as_array().unwrap();
    assert_eq!(certs[0]["check"], "filtration-identity");
    assert!(certs.iter().all(|c| c["violations"].as_array().unwrap().is_empty()));
}

#[test]
fn unreachable_chain_exits_one() {
    let out = stabcert(&["derive", "chain", "--adegrees", "4", "--N", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("refused"));
}

#[test]
fn reachable_chain_exits_zero() {
    let out = stabcert(&["--json", "derive", "chain", "--adegrees", "2,5", "--N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["outcomes"].as_array().unwrap().len(), 2);
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["--json", "verify", "charges", "--n", "2", "--m", "3", "--a", "1/2", "--b", "-3", "--trials", "10", "--seed", "9"];
    let first = stabcert(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, stabcert(&args).stdout);
}

#[test]
fn floats_and_unknown_commands_are_usage_errors() {
    assert_eq!(stabcert(&["scan", "bayer", "--n", "1", "--a", "0.5", "--b", "0", "--bound", "3"]).status.code(), Some(2));
    assert_eq!(stabcert(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(stabcert(&["schubert", "--n", "3", "--w", "1,1,2"]).status.code(), Some(2));
    assert_eq!(stabcert(&["scan", "bayer", "--n", "1", "--a", "-1", "--b", "0", "--bound", "3"]).status.code(), Some(2));
}

#[test]
fn hn_orders_factors() {
    let out = stabcert(&["--json", "hn", "p1", "--degrees", "5", "--torsion", "2", "--a", "1", "--b", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["factor"]["torsion_lengths"], serde_json::json!([2]));
    assert_eq!(v[0]["phase"], serde_json::json!({"re": "-2", "im": "0", "shift": 0}));
    assert_eq!(v[1]["factor"]["bundle_degrees"], serde_json::json!([5]));
}

#[test]
fn exploratory_scan_does_not_fail() {
    let out = stabcert(&["--json", "scan", "bayer", "--n", "2", "--a", "1", "--b", "0", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["shadow"], true);
    assert_eq!(v["rigorous"], false);
}
