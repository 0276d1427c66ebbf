use std::process::{Command, Output};

use num_rational::BigRational;
use serde_json::Value;

fn origami(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn origami_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is json")
}

fn rational(v: &Value) -> BigRational {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn compute_rank_one_first_coefficient() {
    let out = origami(&["compute", "--r1", "1", "--r2", "0", "--order", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let t1 = rational(&report["point"]["t1"]);
    let t2 = rational(&report["point"]["t2"]);
    let one = BigRational::from_integer(1.into());
    let want = (&one - &t1 * &t2) / (&one - &t2);
    assert_eq!(rational(&report["localized"][1]), want);
    assert_eq!(report["localized"], report["closed"]);
    assert_eq!(report["agree"], Value::Bool(true));
    assert_eq!(report["localized"].as_array().unwrap().len(), 3);
}

#[test]
fn compute_order_zero() {
    let out = origami(&["compute", "--order", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["localized"], serde_json::json!(["1/1"]));
    assert_eq!(report["closed"], serde_json::json!(["1/1"]));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["compute", "--r1", "0", "--r2", "0"][..],
        &["verify", "no-such-suite"],
        &["verify"],
        &["verify", "framing", "--suite", "oracle"],
        &["verify", "smooth-chi-y", "--r1", "1", "--r2", "1"],
        &["compute", "--num-points", "0"],
        &["compute", "--order", "-1"],
        &["frobnicate"],
    ] {
        assert_eq!(origami(args).status.code(), Some(2), "{args:?}");
    }
    let out = origami_env(&["compute"], "ORIGAMI_THREADS", "many");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "closed-form", "--r1", "2", "--r2", "1", "--order", "6", "--num-points", "5"][..],
        &["verify", "euler-count", "--r1", "2", "--r2", "1", "--order", "8"],
        &["verify", "cy-vanishing", "--r1", "1", "--r2", "1", "--order", "5"],
        &["verify", "--suite", "limits", "--r1", "2", "--r2", "1", "--order", "3"],
        &["verify", "smooth-chi-y", "--r1", "0", "--r2", "2", "--order", "4"],
    ] {
        let out = origami(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let report = json(&out);
        assert_eq!(report["result"]["passed"], Value::Bool(true));
        assert_eq!(report["result"]["counterexample"], Value::Null);
        assert!(report["result"]["checks"].as_u64().unwrap() > 0);
    }
}

#[test]
fn every_suite_runs_from_the_command_line() {
    for name in [
        "closed-form",
        "framing",
        "factorization",
        "limits",
        "oracle",
        "cohomological",
        "no-twist",
        "cy-vanishing",
        "euler-count",
    ] {
        let out = origami(&["verify", name, "--r1", "1", "--r2", "1", "--order", "3", "--num-points", "2"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["result"]["suite"], Value::String(name.into()));
    }
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let args = |p: &std::path::Path| {
        vec![
            "verify".to_string(),
            "closed-form".into(),
            "--r1".into(),
            "2".into(),
            "--r2".into(),
            "1".into(),
            "--order".into(),
            "4".into(),
            "--out".into(),
            p.display().to_string(),
        ]
    };
    let run = |p: &std::path::Path, threads: &str| {
        let argv = args(p);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        let out = origami_env(&argv, "ORIGAMI_THREADS", threads);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    };
    run(&a, "1");
    run(&b, "4");
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);

    let c1 = origami(&["compute", "--r1", "2", "--r2", "2", "--order", "4", "--seed", "11"]);
    let c2 = origami(&["compute", "--r1", "2", "--r2", "2", "--order", "4", "--seed", "11"]);
    assert_eq!(c1.stdout, c2.stdout);
    let c3 = origami(&["compute", "--r1", "2", "--r2", "2", "--order", "4", "--seed", "12"]);
    assert_ne!(c1.stdout, c3.stdout);
}

#[test]
fn report_field_order_is_stable() {
    let out = origami(&["verify", "euler-count", "--r1", "1", "--r2", "0", "--order", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = ["\"command\"", "\"config\"", "\"r1\"", "\"r2\"", "\"order\"", "\"seed\"", "\"num_points\"", "\"suite\"", "\"result\"", "\"passed\"", "\"checks\"", "\"counterexample\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
}
