use std::path::Path;
use std::process::{Command, Output};

use proptest::prelude::*;
use serde_json::Value;
use stimsig_cli::literal::parse_angle;

fn stimsig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stimsig"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = stimsig(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    stimsig(args).status.code().unwrap()
}

fn validator() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn probs_examples() {
    let doc = json(&["probs", "--theta", "0", "--variant", "distinguishable"]);
    assert!((f(&doc["rows"][0]["p20"]) - 2.0 / 3.0).abs() < 1e-12);
    let doc = json(&["probs", "--theta", "pi/4", "--variant", "identical"]);
    assert!(f(&doc["rows"][0]["p20"]).abs() < 1e-12);
    assert!(f(&doc["rows"][0]["max_abs_discrepancy"]) < 1e-9);
    assert_eq!(code(&["probs", "--theta", "bogus"]), 2);
}

#[test]
fn sweep_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    let args = [
        "sweep",
        "--theta-min",
        "0",
        "--theta-max",
        "pi/2",
        "--steps",
        "9",
        "--format",
        "csv",
        "--out",
        p,
    ];
    assert_eq!(code(&args), 0);
    let first = std::fs::read(&path).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta_rad,p20,p11,p02,sigma20_per_lambda2");
    assert_eq!(lines.len(), 10);
    let p20: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((p20 - 2.0 / 3.0).abs() < 1e-15);

    assert_eq!(code(&args), 0);
    assert_eq!(std::fs::read(&path).unwrap(), first);

    assert_eq!(code(&["sweep", "--steps", "1"]), 2);
    assert_eq!(code(&["sweep", "--theta-min", "1", "--theta-max", "0"]), 2);
    let missing = dir.path().join("no/such/dir/out.csv");
    assert_eq!(code(&["sweep", "--out", missing.to_str().unwrap()]), 3);
}

#[test]
fn mc_examples() {
    let args = ["mc", "--theta", "0", "--n", "1000000", "--seed", "42"];
    let a = stimsig(&args);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(f(&doc["rows"][0]["dev20"]).abs() < 3e-3);
    assert_eq!(doc["rows"][0]["n"], 1_000_000);
    assert_eq!(a.stdout, stimsig(&args).stdout);
    assert_eq!(code(&["mc", "--theta", "0", "--n", "0"]), 2);
}

#[test]
fn protocol_examples() {
    let doc = json(&[
        "protocol",
        "--bits",
        "0110",
        "--pairs-per-bit",
        "10000",
        "--seed",
        "5",
    ]);
    assert_eq!(f(&doc["summary"]["error_rate"]), 0.0);
    assert_eq!(doc["summary"]["decoded"], "0110");
    let gap = f(&doc["summary"]["linearity"][1]["gap"]);
    assert!((gap + 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(code(&["protocol", "--bits", ""]), 2);
    assert_eq!(code(&["protocol", "--bits", "01x"]), 2);
    assert_eq!(code(&["protocol", "--bits", "01", "--theta1", "pi/2"]), 2);
    assert_eq!(
        code(&["protocol", "--bits", "01", "--pairs-per-bit", "0"]),
        2
    );
}

#[test]
fn causality_examples() {
    let doc = json(&["causality", "--u", "2", "--beta", "0.9"]);
    assert_eq!(doc["rows"][0]["violated"], true);
    let doc = json(&["causality", "--u", "2", "--beta", "0.5"]);
    assert_eq!(doc["rows"][0]["violated"], false);
    let doc = json(&["causality-scan", "--u", "2"]);
    assert!((f(&doc["rows"][0]["threshold_beta"]) - 0.8).abs() < 1e-6);
    let doc = json(&["causality-scan", "--u", "1"]);
    assert!(doc["rows"][0]["threshold_beta"].is_null());
    assert_eq!(code(&["causality", "--u", "2", "--beta", "1.0"]), 2);
    assert_eq!(code(&["causality", "--u", "2", "--beta", "-0.1"]), 2);
    assert_eq!(code(&["causality", "--u", "-1", "--beta", "0.1"]), 2);
    assert_eq!(code(&["causality-scan", "--u", "2", "--length", "0"]), 2);
}

#[test]
fn documents_match_schema() {
    let v = validator();
    let cases: &[&[&str]] = &[
        &["probs", "--theta", "3pi/8", "--variant", "identical"],
        &["sweep", "--steps", "5"],
        &["mc", "--theta", "pi/8", "--n", "5000", "--seed", "1"],
        &["protocol", "--bits", "1011", "--pairs-per-bit", "100"],
        &["causality", "--u", "3", "--beta", "0.7", "--ell", "0.2"],
        &["causality-scan", "--u", "0.5,1.5,2,5,10"],
    ];
    for args in cases {
        let doc = json(args);
        let errors: Vec<String> = v.iter_errors(&doc).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
    // the schema is not vacuous
    let mut doc = json(&["probs", "--theta", "0"]);
    doc["rows"][0]["p20"] = Value::from(1.5);
    assert!(!v.is_valid(&doc));
    doc["schema_version"] = Value::from("0.9");
    assert!(!v.is_valid(&doc));
}

#[test]
fn csv_columns_are_fixed() {
    let header = |args: &[&str]| {
        let out = stimsig(args);
        String::from_utf8(out.stdout)
            .unwrap()
            .lines()
            .next()
            .unwrap()
            .to_owned()
    };
    assert_eq!(
        header(&["probs", "--theta", "0", "--format", "csv"]),
        "theta_rad,variant,p20,p11,p02,fp_p20,fp_p11,fp_p02,max_abs_discrepancy,sigma20_per_lambda2"
    );
    assert_eq!(
        header(&["causality-scan", "--u", "2", "--format", "csv"]),
        "u,threshold_beta,closed_form_beta,abs_error"
    );
    assert_eq!(
        header(&[
            "protocol",
            "--bits",
            "01",
            "--pairs-per-bit",
            "10",
            "--format",
            "csv"
        ]),
        "index,sent,decoded,p20_hat"
    );
}

proptest! {
    #[test]
    fn symbolic_angle_matches_division(m in -16i32..16, n in 1i32..64) {
        let text = format!("{m}pi/{n}");
        let want = m as f64 * std::f64::consts::PI / n as f64;
        prop_assert_eq!(parse_angle(&text).unwrap(), want);
    }

    #[test]
    fn decimal_angle_round_trips(x in -100.0f64..100.0) {
        prop_assert_eq!(parse_angle(&format!("{x:?}")).unwrap(), x);
    }
}
