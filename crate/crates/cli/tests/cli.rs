use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_lattice-lab"))
        .arg("--output")
        .arg("json")
        .args(args)
        .output()
        .unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("lattice-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_reports_and_round_trips() {
    let (code, v) = run(&["build", "named:E7^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 14);
    assert_eq!(v["unimodular"], true);
    assert_eq!(v["roots"], "E7^2");
    let (_, v) = run(&["build", "named:Gamma12"]);
    assert_eq!(
        (v["rank"].as_u64(), v["roots"].as_str()),
        (Some(12), Some("D12"))
    );

    let first = tmp("e72.json");
    let second = tmp("e72-again.json");
    run(&["build", "E7^2", "--out", first.to_str().unwrap()]);
    run(&[
        "build",
        first.to_str().unwrap(),
        "--out",
        second.to_str().unwrap(),
    ]);
    assert_eq!(
        std::fs::read_to_string(&first).unwrap(),
        std::fs::read_to_string(&second).unwrap()
    );

    let one = tmp("one.json");
    std::fs::write(&one, r#"{"gram": [[1]]}"#).unwrap();
    let (code, v) = run(&["build", one.to_str().unwrap()]);
    assert_eq!((code, v["rank"].as_u64()), (0, Some(1)));
}

#[test]
fn exit_codes() {
    let (code, v) = run(&["build", r#"{"gram": [[1, 2], [2, 1]]}"#]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("positive definite"));
    assert_eq!(run(&["invariant", "m", r#"{"gram": [[2]]}"#]).0, 1);
    assert_eq!(run(&["invariant", "ep", "E8"]).0, 1);
    assert_eq!(
        run(&["invariant", "m", "A1^22", "--mode", "exhaustive"]).0,
        1
    );
    assert_eq!(
        run(&[
            "invariant",
            "m",
            "E8",
            "--mode",
            "witness",
            "--norm-bound",
            "1"
        ])
        .0,
        1
    );
    let (code, v) = run(&["invariant", "f4", "Gamma16", "--budget-seconds", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["report"]["partial"], true);
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let cert = tmp("m-e8.json");
    let (code, v) = run(&["invariant", "m", "E8", "--out", cert.to_str().unwrap()]);
    assert_eq!((code, v["report"]["value"].as_i64()), (0, Some(1)));
    let (code, v) = run(&["verify-certificate", cert.to_str().unwrap()]);
    assert_eq!((code, v["verified"].as_bool()), (0, Some(true)));

    let mut c: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    c["report"]["value"] = 2.into();
    let bad = tmp("m-e8-bad.json");
    std::fs::write(&bad, c.to_string()).unwrap();
    assert_eq!(run(&["verify-certificate", bad.to_str().unwrap()]).0, 3);
}

#[test]
fn ring_commands() {
    let (code, v) = run(&["ring", "zeta", "1"]);
    assert_eq!((code, v["text"].as_str()), (0, Some("α")));
    let (_, v) = run(&["ring", "zeta", "2", "--epsilon"]);
    assert_eq!(v["text"], "2α² + 8ε − 8");
    let (code, v) = run(&["ring", "verify", "--up-to", "20", "--xi"]);
    assert_eq!((code, v["certified_through"].as_u64()), (0, Some(20)));
}
