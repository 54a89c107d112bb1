use std::path::Path;
use std::process::{Command, Output};

fn gnormlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnormlab")).args(args).output().expect("spawn gnormlab")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_json_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = gnormlab(&["run", "--suite", "conj_bound,prior", "--trials", "3", "--dims", "2,3", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let entries = report["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert_eq!(report["config"]["trials"], 3);
    assert!(report["config"].get("output_path").is_none());

    let r = gnormlab(&["replay", "--from", path_str(&out), "--index", "0"]);
    assert_eq!(r.status.code(), Some(0), "{}", String::from_utf8_lossy(&r.stderr));
    let replayed: serde_json::Value = serde_json::from_slice(&r.stdout).unwrap();
    assert_eq!(replayed["lhs"], entries[0]["worst"]["lhs"]);
    assert_eq!(replayed["rhs"], entries[0]["worst"]["rhs"]);

    let bad = gnormlab(&["replay", "--from", path_str(&out), "--index", "100000"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn csv_output_to_stdout() {
    let o = gnormlab(&["run", "--suite", "phased", "--trials", "2", "--dims", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,norm,trials,violations,min_slack,mean_slack"));
    // operator, hs, five Schatten exponents, Ky Fan 1 and 2
    assert_eq!(lines.count(), 9);
}

#[test]
fn config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("config.json");
    std::fs::write(&cfg, r#"{"trials": 2, "dims": [2], "suites": ["real_part"], "format": "csv"}"#).unwrap();
    let o = gnormlab(&["run", "--config", path_str(&cfg), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["config"]["trials"], 2);
    assert_eq!(report["config"]["report_format"], "json");
}

#[test]
fn recording_suite_does_not_fail_the_run() {
    let o = gnormlab(&["run", "--suite", "pos_multiplier_plus", "--trials", "30", "--dims", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("recording pos_multiplier_plus"));
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(gnormlab(&["run", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(gnormlab(&["run", "--suite", "no_such_suite"]).status.code(), Some(2));
    assert_eq!(gnormlab(&["run", "--radius", "1.5"]).status.code(), Some(2));
    assert_eq!(gnormlab(&["run", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(gnormlab(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn io_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing").join("report.json");
    let o = gnormlab(&["run", "--suite", "phased", "--trials", "1", "--dims", "2", "--out", path_str(&out)]);
    assert_eq!(o.status.code(), Some(3));
    let o = gnormlab(&["replay", "--from", path_str(&dir.path().join("absent.json")), "--index", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_matrix_reports_norms() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    std::fs::write(&file, r#"{"rows": 2, "cols": 2, "entries": [[3, 0], [0, 0], [0, 0], [4, 0]]}"#).unwrap();
    let o = gnormlab(&["check-matrix", "--file", path_str(&file), "--norms", "operator,schatten(2),kyfan(2)"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["singular_values"], serde_json::json!([4.0, 3.0]));
    let values: Vec<f64> = v["norms"].as_array().unwrap().iter().map(|n| n["value"].as_f64().unwrap()).collect();
    assert_eq!(values, vec![4.0, 5.0, 7.0]);
    assert_eq!(v["structure"]["hermitian"], true);

    let all = gnormlab(&["check-matrix", "--file", path_str(&file)]);
    let v: serde_json::Value = serde_json::from_slice(&all.stdout).unwrap();
    assert_eq!(v["norms"].as_array().unwrap().len(), 9);

    std::fs::write(&file, r#"{"rows": 2, "cols": 2, "entries": [[1, 0]]}"#).unwrap();
    assert_eq!(gnormlab(&["check-matrix", "--file", path_str(&file)]).status.code(), Some(2));
}
