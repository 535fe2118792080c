//! End-to-end tests of the command line: grammar, exit codes and the JSON
//! output schemas.

use std::process::Command;

fn sconf(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_sconf")).args(args).output().expect("spawn")
}

fn stdout(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn bracket_examples() {
    let out = sconf(&["bracket", "--alg", "K:4", "zeta1@1", "eta1@-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "D@0 + -1*zeta1.eta1@0");

    let out = sconf(&["bracket", "--alg", "Vir", "E@2", "E@-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "3*E@1");
}

#[test]
fn malformed_expression_exits_2() {
    let out = sconf(&["bracket", "--alg", "K:4", "zeta1", "eta1@-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sconf(&["bracket", "--alg", "Nope:7", "zeta1@1", "eta1@-1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn audit_exit_codes() {
    let out = sconf(&["audit", "--alg", "Khat:4", "--window", "2"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(parsed["ok"], serde_json::Value::Bool(true));

    let out = sconf(&["audit", "--alg", "CK6", "--window", "1"]);
    assert!(out.status.success());

    // the fault-injection hook must flip the exit code
    let out = sconf(&["audit", "--alg", "Khat:4", "--window", "1", "--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn cocycle_commands() {
    let out = sconf(&["cocycle", "check", "--id", "psi", "--alg", "KD:4", "--window", "2"]);
    assert!(out.status.success());
    let out = sconf(&[
        "cocycle", "eval", "--id", "psi", "--alg", "KD:4", "D@2", "omega@-2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1");
}

#[test]
fn module_act_schema() {
    let dir = tempfile::tempdir().expect("tmp");
    let path = dir.path().join("act.json");
    let out = sconf(&[
        "module",
        "act",
        "--alg",
        "Khat:4",
        "--word",
        "z1@1,z1s@0,e1@-1,e1s@0",
        "--lambda",
        "1/2,3/2,5/3",
        "--delta",
        "1/7",
        "--u",
        "2/9",
        "--json",
        path.to_str().expect("utf8"),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("file")).expect("json");
    // (l2 + lc/2)(l2 - lc/2) = (3/2 + 5/6)(3/2 - 5/6) = 14/9
    let coeff = &parsed["terms"][0]["coeff"];
    assert_eq!(coeff["num"], 14);
    assert_eq!(coeff["den"], 9);
}

#[test]
fn classify_and_sweep() {
    let out = sconf(&[
        "classify", "eval", "--alg", "Khat:4", "--lambda", "1/2,1/2,1", "--delta", "1/4",
        "--oracle",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(parsed["cuspidal"], serde_json::Value::Bool(true));
    assert_eq!(parsed["identities_vanish"], serde_json::Value::Bool(true));

    let dir = tempfile::tempdir().expect("tmp");
    let path = dir.path().join("sweep.csv");
    let out = sconf(&[
        "classify",
        "sweep",
        "--alg",
        "Khat:4",
        "--lambdas",
        "1/2,1/2,1;1/2,1/2,-1;1,1,2",
        "--deltas",
        "1/4,3/4,1/2",
        "--oracle",
        "--out",
        path.to_str().expect("utf8"),
    ]);
    assert!(out.status.success());
    let table = std::fs::read_to_string(&path).expect("file");
    let lines: Vec<&str> = table.trim().lines().collect();
    assert_eq!(lines.len(), 10); // header + 3x3 grid
    assert!(lines[0].starts_with("lambda,delta,"));
    assert!(!table.contains(",false,\"lambda(h1) = 1, delta = (1 - lambda2)/2"));
    // the empty grid is fine
    let out = sconf(&[
        "classify", "sweep", "--alg", "W:2", "--lambdas", "", "--deltas", "",
    ]);
    assert_eq!(out.status.code(), Some(2)); // empty grid entries fail to parse
}

#[test]
fn locality_command() {
    let out = sconf(&[
        "locality", "--alg", "K2:4", "--a", "zeta2", "--b", "eta2", "--window", "8",
        "--maxN", "6", "--semi", "--rule-a", "even", "--rule-b", "even",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).trim(), "order 2");
}

#[test]
fn jordan_commands() {
    let out = sconf(&["jordan", "table", "--alg", "CK6"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(parsed["families"].as_array().expect("arr").len(), 4);
    let out = sconf(&["jordan", "compare"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    assert_eq!(parsed["entrywise_match"], serde_json::Value::Bool(true));
}
