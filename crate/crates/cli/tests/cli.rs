use std::process::Command;

use epsilon_cli::report::without_timing;
use serde_json::Value;

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

fn read_json(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn smallest_instance_passes() {
    let status = verify()
        .args(["--p", "3", "--m", "1", "--d", "2", "--suite", "all", "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stdout));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["--p", "4"],
        vec!["--p", "3", "--m", "2", "--d", "2"],
        vec!["--p", "3", "--k4", "5"],
        vec!["--suite", "nonsense"],
        vec!["--p", "3..2"],
    ] {
        let out = verify().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
    let out = verify().args(["--p", "3", "--m", "2", "--d", "2"]).output().unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("relatively prime"));
}

#[test]
fn report_header_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = verify()
        .args(["--suite", "groupring", "--report"])
        .arg(&path)
        .env("EPSV_P", "3..7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&path);
    let header = &report["header"];
    assert_eq!(header["schema_version"], 1);
    assert_eq!(header["config"]["primes"], serde_json::json!([3, 5, 7]));
    assert!(header["gauss_convention"].is_null());
    let results = report["results"].as_array().unwrap();
    assert_eq!(results.len(), 6);
    assert!(results.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn convention_file_is_written_then_reused() {
    let dir = tempfile::tempdir().unwrap();
    let conv = dir.path().join("convention.json");
    let report = dir.path().join("r.json");
    for _ in 0..2 {
        let out = verify()
            .args(["--p", "3", "--m", "1", "--d", "1", "--suite", "gauss", "--convention"])
            .arg(&conv)
            .arg("--report")
            .arg(&report)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert!(conv.exists());
    }
    let stored = read_json(&conv);
    assert_eq!(stored, serde_json::json!({ "char_sign": 1, "exp_sign": 1, "artin_dir": -1 }));
    assert_eq!(read_json(&report)["header"]["gauss_convention"], stored);

    // a persisted convention that calibration rejects fails the run
    std::fs::write(&conv, r#"{"char_sign": 1, "exp_sign": 1, "artin_dir": 1}"#).unwrap();
    let out = verify()
        .args(["--p", "3", "--m", "1", "--d", "1", "--suite", "gauss", "--convention"])
        .arg(&conv)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = verify()
            .args(["--p", "3,5", "--m", "1,2", "--d", "1..2", "--suite", "fundmatrix", "--seed", "11", "--report"])
            .arg(&path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        without_timing(&read_json(&path))
    };
    assert_eq!(run("a.json"), run("b.json"));
}
