use std::process::{Command, Output};

use serde_json::Value;
use timelike_hilbert::finsler::{normed_functional, RegionKind};

fn tlh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tlh")).args(args).env_remove("TLH_DEFAULT_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn dist_in_a_chart() {
    let out = tlh(&["dist", "--chart", "2-", "1,1", "e,e"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["relation"], "before");
    assert!((v["hilbert"].as_f64().unwrap() - 0.5).abs() < 1e-12);
}

#[test]
fn dist_outside_omega_is_a_domain_error() {
    let out = tlh(&["dist", "--sphere", "1,1,1", "1,2,3"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("tlh: "));
    assert_eq!(code(&tlh(&["dist", "--sphere", "1,x,1", "1,2,3"])), 2);
}

#[test]
fn dist_identity_is_zero() {
    let out = tlh(&["dist", "--sphere", "1,-2,3", "1,-2,3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["hilbert"].as_f64(), Some(0.0));
}

#[test]
fn unrelated_pairs() {
    let out = tlh(&["dist", "--chart", "2-", "1,1", "2,0.5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out), serde_json::json!({ "relation": "unrelated" }));
    assert_eq!(code(&tlh(&["dist", "--strict", "--chart", "2-", "1,1", "2,0.5"])), 3);
}

#[test]
fn finsler_examples() {
    let v = json(&tlh(&["finsler", "--q1", "2,1", "-1,-1"]));
    assert!((v["functional"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    let v = json(&tlh(&["finsler", "--q1", "2,1", "0,1"]));
    assert_eq!(v["class"], "null");
    assert_eq!(v["functional"].as_f64(), Some(0.0));
    let v = json(&tlh(&["finsler", "--q2", "-1,1", "1,-3"]));
    assert!((v["normed_value"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(code(&tlh(&["finsler", "--q1", "-2,1", "-1,-1"])), 2);
}

#[test]
fn indicatrix_csv_rows_are_unit() {
    let out = tlh(&["indicatrix", "--type", "q1", "--count", "64", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("v1,v2,branch"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 128);
    for row in rows {
        let f: Vec<&str> = row.split(',').collect();
        let w = [f[0].parse::<f64>().unwrap(), f[1].parse::<f64>().unwrap()];
        assert!((normed_functional(w, RegionKind::TypeQ1).unwrap() - 1.0).abs() <= 1e-12, "{row}");
    }
}

#[test]
fn indicatrix_minimal_count_and_bad_format() {
    let out = tlh(&["indicatrix", "--type", "q2", "--count", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
    assert_eq!(code(&tlh(&["indicatrix", "--type", "q2", "--format", "xml"])), 2);
    assert_eq!(code(&tlh(&["indicatrix", "--type", "q2", "--count", "1"])), 2);
}

#[test]
fn indicatrix_svg_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q2.svg");
    let out = tlh(&["indicatrix", "--type", "q2", "--format", "svg", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 2);
}

#[test]
fn verify_phi_isometry() {
    let out = tlh(&["verify", "phi-isometry", "--samples", "10000", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["seed"], 7);
    assert!(v["max_deviation"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn verify_golden() {
    let out = tlh(&["verify", "golden"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["max_deviation"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn verify_failures() {
    assert_eq!(code(&tlh(&["verify", "no-such-suite"])), 2);
    let out = tlh(&["verify", "additivity", "--samples", "50", "--tol", "0"]);
    assert_eq!(code(&out), 1);
    assert!(json(&out)["counterexample"].is_object());
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "time-inequality", "--samples", "500", "--seed", "11"];
    assert_eq!(tlh(&args).stdout, tlh(&args).stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_tlh"))
        .args(["verify", "time-inequality", "--samples", "500"])
        .env("TLH_DEFAULT_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, tlh(&args).stdout);
}
