use std::process::{Command, Output};

use serde_json::Value;

fn rumin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rumin"))
        .args(args)
        .env_remove("RUMIN_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/output-record.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).expect("schema compiles")
}

#[test]
fn every_command_validates_against_the_schema() {
    let v = validator();
    let runs: &[&[&str]] = &[
        &["spectrum", "--n", "2", "--degree", "1", "--max", "3"],
        &["spectrum", "--n", "3", "--degree", "5", "--max", "2"],
        &["kappa", "--n", "1", "--s", "0"],
        &["kappa", "--n", "1", "--s", "2", "--mode", "direct", "--max", "50"],
        &["kappa", "--n", "2", "--s", "3", "--mode", "reduced", "--max", "40"],
        &["kappa", "--n", "2", "--s", "-1.5", "--mode", "reduced"],
        &["torsion", "--n", "2"],
        &["torsion", "--n", "1", "--kernel", "excluded"],
        &["verify", "--n", "1", "--max", "5"],
    ];
    for args in runs {
        let out = rumin(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let record = json(&out);
        let errors: Vec<String> = v.iter_errors(&record).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn spectrum_rows_for_the_smallest_sphere() {
    let out = rumin(&["spectrum", "--n", "1", "--degree", "0", "--max", "1"]);
    let record = json(&out);
    let rows: Vec<(String, u64)> = record["payload"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["eigenvalue"].as_str().unwrap().to_owned(), e["multiplicity"].as_u64().unwrap()))
        .collect();
    let want = [("0/1", 1), ("1/4", 4), ("4/1", 3)].map(|(a, b)| (a.to_owned(), b));
    assert_eq!(rows, want);
}

#[test]
fn mirror_degrees_print_identical_bytes() {
    for format in ["json", "csv"] {
        let a = rumin(&["spectrum", "--n", "1", "--degree", "3", "--max", "5", "--format", format]);
        let b = rumin(&["spectrum", "--n", "1", "--degree", "0", "--max", "5", "--format", format]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout, "{format}");
    }
    let a = rumin(&["spectrum", "--n", "3", "--degree", "2", "--max", "4"]);
    let b = rumin(&["spectrum", "--n", "3", "--degree", "5", "--max", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["torsion", "--n", "3"];
    assert_eq!(rumin(&args).stdout, rumin(&args).stdout);
    let args = ["kappa", "--n", "2", "--s", "3", "--mode", "direct", "--max", "60"];
    assert_eq!(rumin(&args).stdout, rumin(&args).stdout);
}

#[test]
fn csv_header_is_fixed() {
    let out = rumin(&["spectrum", "--n", "2", "--degree", "1", "--max", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("eigenvalue_num,eigenvalue_den,eigenvalue_float,multiplicity"));
    let floats: Vec<f64> = lines.map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert!(!floats.is_empty());
    assert!(floats.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn kappa_examples() {
    let zero = json(&rumin(&["kappa", "--n", "1", "--s", "0", "--mode", "closed"]));
    assert!(zero["payload"]["value"].as_f64().unwrap().abs() < 1e-12);

    let out = rumin(&["kappa", "--n", "1", "--s", "2", "--mode", "direct", "--max", "400"]);
    assert_eq!(code(&out), 0);
    let p = &json(&out)["payload"];
    let residual = p["residual"].as_f64().unwrap();
    assert!(residual < p["tail_bound"].as_f64().unwrap() + 1e-8);
}

#[test]
fn torsion_examples() {
    let one = json(&rumin(&["torsion", "--n", "1"]));
    let t = one["payload"]["T"].as_f64().unwrap();
    let want = 16.0 * std::f64::consts::PI.powi(2);
    assert!((t - want).abs() < 1e-12 * want);
    assert!((one["payload"]["ratio"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let four = rumin(&["torsion", "--n", "4"]);
    assert_eq!(code(&four), 0);
    assert!((json(&four)["payload"]["ratio"].as_f64().unwrap() - 24.0).abs() < 1e-10);
}

#[test]
fn verify_passes_for_the_seven_sphere() {
    let out = rumin(&["verify", "--n", "3", "--max", "20"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let record = json(&out);
    assert_eq!(record["payload"]["checks_failed"], 0);
    assert!(record["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&rumin(&["spectrum", "--n", "1", "--degree", "0"])), 2);
    assert_eq!(code(&rumin(&["spectrum", "--n", "0", "--degree", "0", "--max", "1"])), 2);
    assert_eq!(code(&rumin(&["kappa", "--n", "1", "--s", "1", "--mode", "sideways"])), 2);
    assert_eq!(code(&rumin(&["kappa", "--n", "1", "--s", "nan"])), 2);
    assert_eq!(code(&rumin(&["bogus"])), 2);
    assert_eq!(code(&rumin(&["spectrum", "--n", "1", "--degree", "4", "--max", "1"])), 3);
    assert_eq!(code(&rumin(&["kappa", "--n", "2", "--s", "0.5", "--mode", "closed"])), 4);
    assert_eq!(code(&rumin(&["kappa", "--n", "2", "--s", "1.5", "--mode", "direct"])), 4);
    assert_eq!(code(&rumin(&["kappa", "--n", "2", "--s", "0.5", "--mode", "reduced"])), 4);
}

#[test]
fn precision_comes_from_the_environment_unless_given() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rumin"));
        cmd.args(["kappa", "--n", "1", "--s", "3"]).args(extra);
        match env {
            Some(v) => cmd.env("RUMIN_PRECISION_BITS", v),
            None => cmd.env_remove("RUMIN_PRECISION_BITS"),
        };
        cmd.output().unwrap()
    };
    let prec = |o: &Output| json(o)["parameters"]["prec"].as_u64().unwrap();
    assert_eq!(prec(&run(None, &[])), 128);
    assert_eq!(prec(&run(Some("200"), &[])), 200);
    assert_eq!(prec(&run(Some("200"), &["--prec", "96"])), 96);
    assert_eq!(code(&run(Some("lots"), &[])), 2);
}
