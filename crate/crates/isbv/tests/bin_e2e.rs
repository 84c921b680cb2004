//! End-to-end tests against the compiled binary: argument handling, exit
//! codes, and report files, exactly as a user would drive them.

use std::process::Command;

fn isbv() -> Command {
    Command::new(env!("CARGO_BIN_EXE_isbv"))
}

#[test]
fn list_prints_the_registry() {
    let out = isbv().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("7 models"));
    assert!(text.contains("iv-iv-disjoint"));
}

#[test]
fn verify_writes_a_report_file_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("out.json");
    let out = isbv()
        .args(["verify", "--model", "segre-d2", "--report"])
        .arg(&report)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["summary"]["fail"], 0);
    assert_eq!(doc["checks"][0]["status"], "pass");
}

#[test]
fn mutated_verify_exits_one_with_the_row_in_the_stamp() {
    let out = isbv()
        .args([
            "verify",
            "--model",
            "i-ii",
            "--checks",
            "span",
            "--mutate",
            "drop-row:7",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["run"]["config"]["mutate"], "drop-row:7");
    assert_eq!(doc["checks"][0]["witness"]["table_rank"], 19);
}

#[test]
fn malformed_model_file_exits_nonzero_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(
        &bad,
        "name = \"oops\"\nbase_vars = [\"x\"]\nequations = [\"z9\"]\n",
    )
    .unwrap();
    let out = isbv()
        .args(["list", "--model-file"])
        .arg(&bad)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("error"), "stderr: {}", err);
}

#[test]
fn enumerate_fiber_count() {
    let out = isbv()
        .args(["enumerate", "ii-ii", "--p", "5", "--base", "1,0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("121 on the variety"), "{}", text);
    // prime 2 is rejected
    let out = isbv()
        .args(["enumerate", "ii-ii", "--p", "2"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn derive_matches_the_table() {
    let out = isbv().args(["derive", "iii-ii"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("generic dimension 20"));
    assert!(text.contains("contained in the space, rank 20"));
}
