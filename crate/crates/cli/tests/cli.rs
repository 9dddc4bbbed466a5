use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn covent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covent")).args(args).output().expect("spawn covent")
}

fn json(args: &[&str]) -> Value {
    let out = covent(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    covent(args).status.code().unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn table41_rows() {
    let v = json(&["table41"]);
    let rows = v.as_array().unwrap();
    let want = [("rho1", 1.0, 0.0), ("rho2", 0.75, 0.25), ("rho3", 0.0, 0.0), ("rho4", 1.0, 1.0)];
    assert_eq!(rows.len(), 4);
    for (row, (label, c, alt)) in rows.iter().zip(want) {
        assert_eq!(row["state"], label);
        assert!((f(&row["cov"]) - c).abs() < 1e-12);
        assert!((f(&row["alt_cov"]) - alt).abs() < 1e-12);
        assert!((f(&row["cov_sq"]) - c * c).abs() < 1e-12);
        assert!((f(&row["alt_cov_sq"]) - alt * alt).abs() < 1e-12);
    }
}

#[test]
fn counterexample_values() {
    let v = json(&["counterexample"]);
    assert!(f(&v["cov"]).abs() < 1e-12);
    assert!((f(&v["alt_cov"]) - 0.25).abs() < 1e-12);
}

#[test]
fn pure_family_csv_follows_sin_squared() {
    let out = covent(&["scan", "pure-family", "--points", "101", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,cov,altcov,var_a"));
    let mut n = 0;
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((cols[1] - (2.0 * cols[0]).sin().powi(2)).abs() < 1e-12, "{line}");
        n += 1;
    }
    assert_eq!(n, 101);
}

#[test]
fn scans_have_the_documented_shapes() {
    let v = json(&["scan", "bell-rotation", "--points", "7"]);
    assert_eq!(v["columns"], serde_json::json!(["theta_x", "theta_y", "cov", "altcov"]));
    assert_eq!(v["rows"].as_array().unwrap().len(), 49);
    let v = json(&["scan", "bell-mixture", "--points", "11", "--b1", "phi+", "--b2", "psi-"]);
    let rows = v["rows"].as_array().unwrap();
    // equal mixture of two Bell states is separable
    assert!(f(&rows[5][1]).abs() < 1e-12);
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["optimize", "--named", "rho2", "--restarts", "6", "--seed", "17", "--measure", "altcov"];
    let (a, b) = (covent(&args), covent(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["history"].as_array().unwrap().len(), 6);
    assert!(f(&v["max_value"]) >= f(&v["identity_value"]) - 1e-12);
}

#[test]
fn optimize_over_pure_states_of_unequal_dims() {
    let v = json(&["optimize", "--dims", "2", "3", "--restarts", "8"]);
    assert!((f(&v["max_value"]) - 3f64.sqrt() / 2.0).abs() < 1e-5, "{}", v["max_value"]);
    assert_eq!(v["dims"], serde_json::json!([2, 3]));
}

#[test]
fn density_matrix_round_trips_between_commands() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("out.json");
    let second = dir.path().join("again.json");
    let p = |x: &Path| x.to_str().unwrap().to_string();
    assert_eq!(code(&["channel", "apply", "--named", "uu", "--out", &p(&first)]), 0);
    let v = json(&["invariants", "--rho", &p(&first)]);
    assert!((f(&v["purity"]) - 0.625).abs() < 1e-12);
    // the emitted file is accepted unchanged and reproduces itself under the identity read
    assert_eq!(code(&["channel", "apply", "--rho", &p(&first), "--out", &p(&second)]), 0);
    let back: Value = serde_json::from_str(&std::fs::read_to_string(&second).unwrap()).unwrap();
    assert_eq!(back["dims"], serde_json::json!([2, 2]));
}

#[test]
fn majorana_commands() {
    let v = json(&["majorana", "roots", "--j", "1", "--re", "1,0,1"]);
    let pts = v["points"].as_array().unwrap();
    assert_eq!(pts.len(), 2);
    let dot: f64 = (0..3).map(|k| f(&pts[0][k]) * f(&pts[1][k])).sum();
    assert!((dot + 1.0).abs() < 1e-12);

    let v = json(&["majorana", "dispersion", "--j", "1", "--re", "1,0,1"]);
    assert!((f(&v["dispersion"]) - 2.0).abs() < 1e-12);

    let v = json(&["majorana", "state2poly", "--j", "1/2", "--re", "1,0"]);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 2);

    let v = json(&["majorana", "catalog", "--j", "5/2"]);
    for e in v.as_array().unwrap() {
        assert!((f(&e["dispersion"]) - 8.75).abs() < 1e-10);
    }
}

#[test]
fn singlet_series() {
    let v = json(&["singlets", "--terms", "8"]);
    assert_eq!(v["counts"], serde_json::json!([1, 1, 4, 4, 9, 9, 16, 16]));
    assert_eq!(v["series"], v["counts"]);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["table41"]), 0);
    assert_eq!(code(&["scan", "pure-family", "--points", "1"]), 2);
    assert_eq!(code(&["scan", "bell-mixture", "--b1", "bogus"]), 2);
    assert_eq!(code(&["optimize", "--named", "nope"]), 2);
    assert_eq!(code(&["optimize", "--named", "rho1", "--tol", "-1"]), 2);
    assert_eq!(code(&["optimize", "--dims", "2", "3", "--operators", "sigma3"]), 2);
    assert_eq!(code(&["majorana", "roots", "--j", "1", "--re", "1,0"]), 2);
    assert_eq!(code(&["majorana", "catalog", "--j", "3"]), 2);
    assert_eq!(code(&["channel", "apply", "--named", "uu", "--format", "csv"]), 2);
    assert_eq!(code(&["invariants", "--rho", "/definitely/missing.json"]), 4);
    assert_eq!(code(&["table41", "--out", "/definitely/missing/dir/x.json"]), 4);
    // a single iteration cannot converge; the artifact is still written
    let out = covent(&["optimize", "--named", "rho2", "--restarts", "1", "--max-iters", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(serde_json::from_slice::<Value>(&out.stdout).is_ok());
}

#[test]
fn schema_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"dims\": [2, 2],\n  \"matrix\": \"oops\"\n}\n").unwrap();
    let out = covent(&["invariants", "--rho", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");

    std::fs::write(&path, r#"{"dims": [2, 2], "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]}"#).unwrap();
    assert_eq!(code(&["invariants", "--rho", path.to_str().unwrap()]), 2);
}
