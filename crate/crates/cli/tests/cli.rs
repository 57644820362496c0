use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ksat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksat")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn density_is_rounded_to_a_clause_count() {
    for (r, m) in [("3.5", 70), ("3.475", 70), ("3.47", 69), ("0", 0)] {
        let out = ksat(&["gen", "--n", "20", "--r", r]);
        assert!(out.status.success());
        assert!(stdout(&out).contains(&format!("p cnf 20 {m}\n")), "r = {r}");
    }
}

#[test]
fn clause_count_flags_are_exclusive_and_required() {
    assert_eq!(ksat(&["gen", "--n", "5"]).status.code(), Some(2));
    assert_eq!(ksat(&["gen", "--n", "5", "--m", "3", "--r", "1"]).status.code(), Some(2));
    assert_eq!(ksat(&["gen", "--n", "5", "--m", "3", "--bogus"]).status.code(), Some(2));
}

#[test]
fn bounds_json() {
    let out = ksat(&["bounds", "--k", "10", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["r_upper"].as_f64().unwrap() - 708.9360).abs() < 1e-3);
    assert!((v["r_bal"].as_f64().unwrap() - 704.9703).abs() < 1e-3);
    assert!((v["r_bp"].as_f64().unwrap() - 708.7429).abs() < 1e-3);
    assert!(stdout(&ksat(&["bounds", "--k", "10"])).contains("708.9361"));
}

#[test]
fn census_cap_and_json_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("big.cnf");
    let cnf = cnf.to_str().unwrap();
    assert!(ksat(&["gen", "--n", "25", "--m", "80", "--out", cnf]).status.success());

    let out = ksat(&["census", cnf, "--cap", "20"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));

    let out = ksat(&["census", cnf, "--cap", "20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1);
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["exit_code"], 2);

    let out = ksat(&["census", "--format", "json", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1);
    assert!(serde_json::from_str::<Value>(&err).is_ok());
}

#[test]
fn census_and_marginals_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = dir.path().join("f.cnf");
    let cnf = cnf.to_str().unwrap();
    assert!(ksat(&["gen", "--model", "planted", "--n", "12", "--m", "30", "--seed", "4", "--out", cnf]).status.success());
    let text = fs::read_to_string(cnf).unwrap();
    assert!(text.contains("c planted "));

    let v: Value = serde_json::from_slice(&ksat(&["census", cnf, "--format", "json", "--spectrum"]).stdout).unwrap();
    assert!(v["count"].as_u64().unwrap() >= 1);
    assert_eq!(v["marginals"].as_array().unwrap().len(), 12);
    let spectrum: u64 = v["spectrum"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum();
    assert_eq!(spectrum, v["count"].as_u64().unwrap().pow(2));

    let out = ksat(&["marginals", cnf, "--format", "json"]);
    let lines: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[0]["var"], 1);
    assert!(lines[12].get("w_maj").is_some());
}

#[test]
fn moments_report() {
    let out = ksat(&["moments", "--k", "10", "--hessian-step", "1e-3", "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["gradient_max_abs"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["offdiag"]["passed"], true);
    assert_eq!(v["hessian"]["within_bound"], true);

    let out = ksat(&["moments", "--k", "4", "--type-spec", "0.5:0.5:1", "--ell", "0.5,0.5,0.5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn saddle_from_degree_file() {
    let dir = tempfile::tempdir().unwrap();
    let deg = dir.path().join("d.txt");
    let deg = deg.to_str().unwrap();
    assert!(ksat(&["gen", "--model", "degrees", "--n", "30", "--m", "100", "--out", deg]).status.success());
    let out = ksat(&["saddle", "--degrees", deg, "--eps", "0", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["simple"]["ratio"].as_f64().unwrap() - 1.0).abs() < 0.1);
    assert!((v["triple"]["ratio"].as_f64().unwrap() - 1.0).abs() < 0.2);
}

#[test]
fn experiment_writes_one_line_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("skew.jsonl");
    let out_path = out_path.to_str().unwrap();
    let out = ksat(&["experiment", "skew", "--n", "12", "--m", "40", "--trials", "15", "--json-out", out_path, "--format", "json"]);
    assert!(out.status.success());
    let text = fs::read_to_string(out_path).unwrap();
    assert_eq!(text.lines().count(), 16);
    let summary: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(summary["summary"]["satisfiable"], 15);
    assert!(summary["meta"]["build_id"].is_string());
}
