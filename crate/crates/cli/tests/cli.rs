use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn eisk3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eisk3")).args(args).env_remove("EISK3_TOL").output().expect("run eisk3")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json report")
}

#[test]
fn invariants_row_for_r18() {
    let o = eisk3(&["invariants", "--r", "18"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("r,a,n,k,family_dim,ball_dim"));
    assert!(lines.next().unwrap().starts_with("18,2,8,5"));
}

#[test]
fn invariants_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(&path, r#"{"components":[{"d1":2,"d2":1},{"d1":1,"d2":2}]}"#).unwrap();
    let o = eisk3(&["invariants", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rows"][0]["r"], 12);
    assert_eq!(v["rows"][0]["a"], 5);
}

#[test]
fn bad_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    fs::write(&path, r#"{"components":[{"d1":2,"d2":1}]}"#).unwrap();
    let o = eisk3(&["invariants", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gvalue_outside_domain_exits_2() {
    let o = eisk3(&["gvalue", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lambda"));
}

#[test]
fn unknown_flag_exits_2() {
    let o = eisk3(&["verify-pf", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn grid_outside_unit_interval_exits_2() {
    assert_eq!(eisk3(&["verify-pf", "--grid", "0:0.9:33"]).status.code(), Some(2));
    assert_eq!(eisk3(&["verify-pf", "--grid", "0.1:0.9:2"]).status.code(), Some(2));
}

#[test]
fn verify_pf_report_schema() {
    let o = eisk3(&["verify-pf", "--grid", "0.1:0.9:33", "--tol", "1e-5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["grid"].as_array().unwrap().len(), 33);
    let res = v["residuals"].as_array().unwrap();
    assert_eq!(res.len(), 33);
    assert_eq!(res[0].as_array().unwrap().len(), 2);
    assert!(v["max_abs"].as_f64().unwrap() < 1e-5);
    assert_eq!(v["typo_ledger"].as_array().unwrap().len(), 3);
}

#[test]
fn inhomogeneous_control_fails_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let o = eisk3(&["verify-inhomog", "--control", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["verdict"], "fail");
    assert!(v["max_abs"].as_f64().unwrap() >= 1.1);
}

#[test]
fn tolerance_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_eisk3"))
        .args(["verify-inhomog"])
        .env("EISK3_TOL", "1e-12")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["tol"].as_f64(), Some(1e-12));
    let diag = v["diagnostics"][0].as_str().unwrap();
    assert!(diag.contains("noise floor"), "{diag}");
}

#[test]
fn csv_not_offered_for_verdict_only_commands() {
    assert_eq!(eisk3(&["chain-check", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn gvalue_sweep_is_csv() {
    let o = eisk3(&["gvalue", "--grid", "0.2:0.8:4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("lambda,g_real,g_re,g_im,err_estimate,converged"));
}

#[test]
fn tangents_on_normalized_family() {
    let o = eisk3(&["tangents", "--direction", "1", "--lambda", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let fibers = v["fibers"].as_array().unwrap();
    assert!(fibers.iter().any(|f| f["kind"] == "node_passing" && f["exact_value"] == "0"));
    assert_eq!(v["singular_points"].as_array().unwrap().len(), 5);
}

#[test]
fn tangents_from_polynomial_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    // y² − x
    fs::write(&path, r#"{"0,2": "1", "1,0": "-1"}"#).unwrap();
    let o = eisk3(&["tangents", "--poly", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().nth(1).unwrap();
    assert!(row.contains(",0,tangent,2,"), "{row}");
}

#[test]
fn cycle_and_chain_checks_pass() {
    let v = json(&eisk3(&["cycle-check", "--lambda", "0.3"]));
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["chain_residual"], "0");
    assert_eq!(v["total_divisor"]["p0"], 0);
    assert_eq!(json(&eisk3(&["chain-check"]))["residual"], "0");
    assert_eq!(json(&eisk3(&["resolution-check"]))["verdict"], "pass");
}

#[test]
fn cycle_check_rejects_degenerate_lambda() {
    assert_eq!(eisk3(&["cycle-check", "--lambda", "1"]).status.code(), Some(2));
}

#[test]
fn lattice_file_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lat.json");
    fs::write(&path, r#"{"gram":[[2,-1],[-1,2]],"isometry":[[0,-1],[1,-1]]}"#).unwrap();
    let v = json(&eisk3(&["lattice", "--input", path.to_str().unwrap()]));
    assert_eq!(v["three_rank"], 1);
    assert_eq!(v["hermitian_gram"][0][0]["a"], 3);
}

#[test]
fn paper_suite_passes_and_is_deterministic() {
    let a = eisk3(&["paper-suite", "--tol", "1e-4", "--mc-samples", "20000"]);
    let b = eisk3(&["paper-suite", "--tol", "1e-4", "--mc-samples", "20000"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    for s in v["sections"].as_array().unwrap() {
        assert_eq!(s["verdict"], "pass", "{}", s["name"]);
    }
    assert!(!stdout(&a).contains("elapsed"));
}

#[test]
fn seed_changes_the_monte_carlo_section() {
    let mc = |seed: &str| {
        let v = json(&eisk3(&["paper-suite", "--seed", seed, "--mc-samples", "20000"]));
        v["sections"].as_array().unwrap().iter().find(|s| s["name"] == "monte_carlo_g").unwrap()["details"]["monte_carlo"]
            .clone()
    };
    assert_ne!(mc("1"), mc("2"));
}
