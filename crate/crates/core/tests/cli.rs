//! End-to-end runs of the `mpx` binary.

use std::io::Write;
use std::process::{Command, Output};

fn mpx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpx"))
        .args(args)
        .output()
        .expect("mpx runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn degree_zero_is_one() {
    let out = mpx(&["eval", "--n", "0", "--x", "3.2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["command"], "eval");
    assert_eq!(v["results"]["value"], 1.0);
    assert!(v["timing"].is_null());
    for key in ["command", "params", "results", "values", "timing"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        &["table", "--N", "12", "--x", "-1.3", "--lambda", "0.8"][..],
        &["second-kind", "--x", "0.3", "--z-im", "1.5"][..],
        &["verify", "--lambda", "1.3", "--phi", "1.1", "--seed", "7"][..],
    ] {
        let a = mpx(args);
        let b = mpx(args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn timing_is_opt_in() {
    let v = json(&mpx(&["eval", "--timing"]));
    assert!(v["timing"]["elapsed_ms"].is_number());
}

#[test]
fn validation_errors_exit_one() {
    for args in [
        &["eval", "--lambda", "0"][..],
        &["eval", "--phi", "3.5"][..],
        &["eval", "--unknown-flag"][..],
        &["frobnicate"][..],
        &["table", "--N", "501"][..],
        &["ortho", "--N", "40"][..],
        &["expand", "--format", "csv"][..],
        &["second-kind", "--z-im", "0.1"][..],
        &["ortho", "--panels", "0"][..],
    ] {
        let out = mpx(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn numerical_failure_exits_two() {
    let out = mpx(&["ortho", "--nodes", "2", "--panels", "3", "--tol", "1e-14"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_every_check() {
    let out = mpx(&["verify", "--seed", "3"]);
    let v = json(&out);
    let checks = v["values"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["check"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.contains(&"polynomials.three_route_agreement"));
    let any_failed = checks.iter().any(|c| c["pass"] == false);
    assert_eq!(out.status.code(), Some(if any_failed { 3 } else { 0 }));
    assert_eq!(v["results"]["total"], checks.len());
}

#[test]
fn config_file_with_flag_override() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# parameters\nlambda = 2.0\nphi = 0.7\nn = 3\nx = 1.5").unwrap();
    let path = f.path().to_str().unwrap();
    let from_file = json(&mpx(&["eval", "--config", path]));
    assert_eq!(from_file["params"]["lambda"], 2.0);
    assert_eq!(from_file["params"]["n"], 3);
    let overridden = json(&mpx(&["eval", "--config", path, "--lambda", "0.5"]));
    assert_eq!(overridden["params"]["lambda"], 0.5);
    assert_eq!(overridden["params"]["phi"], 0.7);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "lambda = two").unwrap();
    let out = mpx(&["eval", "--config", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_csv() {
    let out = mpx(&["table", "--N", "4", "--x", "0.25", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,x,P_n,P*_n"));
    assert_eq!(lines.count(), 5);
}
