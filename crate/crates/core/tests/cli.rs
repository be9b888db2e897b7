//! Exit codes and output of the command-line tool.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_bigenic")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn embed_reports_an_embedding() {
    let (code, out) = run(&["embed", "--h", "P4", "--g", "P6"]);
    assert_eq!(code, 0);
    assert!(out.contains("embeds"));
    assert_eq!(run(&["embed", "--h", "K3", "--g", "C6"]).0, 1);
}

#[test]
fn classify_json_shape() {
    let (code, out) = run(&["--json", "classify", "--h1", "co(2P1+P2)", "--h2", "P2+P3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["wqo"], "WqoLabelled");
    assert_eq!(v["rule"], "T6.1-1(iv)");
    assert_eq!(v["cw"], "Bounded");
    assert_eq!(v["cw_rule"], "T6.2-1(iv)");
}

#[test]
fn decompose_flags_non_members() {
    assert_eq!(run(&["decompose", "--in", "C5"]).0, 0);
    let (code, out) = run(&["decompose", "--in", "P6"]);
    assert_eq!(code, 1);
    assert!(out.contains("P2+P3"));
}

#[test]
fn decompose_json_lists_claims() {
    let (code, out) = run(&["--json", "decompose", "--in", "C5"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["claims"].as_array().unwrap().iter().any(|c| c["id"] == "L4.2-C3" && c["ok"] == true));
}

#[test]
fn usage_and_budget_errors_exit_with_two() {
    assert_eq!(run(&["embed", "--h", "P4", "--g", "nonsense(("]).0, 2);
    assert_eq!(run(&["--budget", "3", "embed", "--h", "P6", "--g", "C8"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
}

#[test]
fn antichain_verify_and_audit_pass() {
    let args = ["antichain", "verify", "--family", "thm51", "--n", "2..4", "--forbidden", "co(2P1+P2),P2+P4,P6"];
    assert_eq!(run(&args).0, 0);
    assert_eq!(run(&["audit", "--corpus-n", "4"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--json", "selftest", "--only", "3,5,6"]);
    let b = run(&["--json", "selftest", "--only", "3,5,6"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}
