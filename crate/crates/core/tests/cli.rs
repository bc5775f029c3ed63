use std::path::PathBuf;
use std::process::{Command, Output};

use jsonschema::JSONSchema;
use serde_json::Value;

fn supnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supnorm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema(name: &str) -> JSONSchema {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", &format!("{name}.schema.json")].iter().collect();
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    JSONSchema::compile(&raw).unwrap()
}

fn assert_valid(name: &str, v: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("{name}: {msgs:?}\n{v:#}");
}

/// Run with `--json`, check the exit code, validate the report and its
/// outputs, and return the outputs.
fn json_run(args: &[&str], code: i32, outputs_schema: &str) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = supnorm(&all);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_valid("run_report", &report);
    assert_valid(outputs_schema, &report["outputs"]);
    report["outputs"].clone()
}

#[test]
fn ksmall_verify() {
    let out = json_run(&["ksmall", "verify", "--family", "so-sl", "--k", "3"], 0, "ksmall_report");
    assert_eq!(out["kappa2_lower"], "2");
    assert_eq!(out["verdict"], "positive");
}

#[test]
fn reproduce_table() {
    let out = json_run(&["reproduce", "section7"], 0, "section7_table");
    assert_eq!(out["rows"].as_array().unwrap().len(), 12);
    assert_eq!(out["all_positive"], true);
    let out = json_run(&["reproduce", "section7", "--family", "so-sl", "--k", "1"], 0, "section7_table");
    assert_eq!(out["rows"].as_array().unwrap().len(), 1);
    assert_eq!(out["rows"][0]["kappa2_lower"], "2");
}

#[test]
fn charring_commands() {
    let out = json_run(
        &["charring", "eval", "--family", "A", "--rank", "2", "--lambda", "1,1,0", "--x", "1,1,1"],
        0,
        "character_value",
    );
    assert_eq!(out["value"], "3");
    let out = json_run(&["charring", "search", "--family", "A", "--rank", "1", "--x", "i,-i"], 0, "character_value");
    assert!(out["abs"].as_f64().unwrap() > 0.0);
}

#[test]
fn satake_commands() {
    let out = json_run(&["satake", "table", "--n", "2", "--mu", "2,0", "--q", "sym"], 0, "satake_expansion");
    assert_eq!(out["terms"][1]["coeff"], "-q^{-1}");
    let out = json_run(&["satake", "table", "--n", "2", "--mu", "2,0", "--q", "3"], 0, "satake_expansion");
    assert_eq!(out["terms"][1]["coeff"], "-1/3");
    let out = json_run(&["satake", "oracle", "--n", "2", "--mu", "2,0", "--p", "3"], 0, "satake_oracle");
    assert_eq!(out["sphere_size"], 12);
    assert_eq!(out["terms"][1]["coeff"], "-1/3");
    let out = json_run(&["satake", "amplifier", "--n", "2", "--x", "1,-1"], 0, "character_value");
    assert_eq!(out["mu"], serde_json::json!([2, 0]));
}

#[test]
fn buildings_commands() {
    let out = json_run(&["buildings", "delta", "--family", "A", "--rank", "2", "--mu", "2,1,0"], 0, "delta_profile");
    assert_eq!(out["values"], serde_json::json!([3, 1]));
    let out = json_run(&["buildings", "sphere", "--n", "2", "--mu", "2,0", "--at-q", "3"], 0, "sphere_polynomial");
    assert_eq!(out["polynomial"], "q^2 + q");
    assert_eq!(out["value"], "12");
    let out = json_run(
        &["buildings", "intersect", "--config", "diag-gl2", "--mu", "1,0", "--p", "2", "--twist", "random", "--seed", "3"],
        0,
        "building_count",
    );
    assert_eq!(out["count"], 0);
    let out = json_run(&["buildings", "intersect", "--config", "full-gl2", "--mu", "1,0", "--p", "2"], 0, "building_count");
    assert_eq!((out["count"].clone(), out["ratio"].clone()), (3.into(), "3/2".into()));
}

#[test]
fn acceptance_filter_and_determinism() {
    let out = json_run(&["acceptance", "--only", "satake", "--seed", "7"], 0, "acceptance");
    let ids: Vec<i64> = out["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_i64().unwrap()).collect();
    assert_eq!(ids, vec![3, 4]);
    let a = supnorm(&["acceptance", "--only", "5,7", "--seed", "7", "--json"]);
    let b = supnorm(&["acceptance", "--only", "5,7", "--seed", "7", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(supnorm(&["bogus"]).status.code(), Some(2));
    assert_eq!(supnorm(&["satake", "table", "--n", "2", "--mu", "0,1"]).status.code(), Some(2));
    let capped = supnorm(&["satake", "oracle", "--n", "3", "--mu", "2,0,0", "--p", "3", "--cap", "10"]);
    assert_eq!(capped.status.code(), Some(4));
    let capped = supnorm(&["buildings", "intersect", "--config", "torus-gl2", "--mu", "3,0", "--p", "5", "--cap", "3"]);
    assert_eq!(capped.status.code(), Some(4));
    assert_eq!(supnorm(&["ksmall", "verify", "--family", "nope", "--k", "1"]).status.code(), Some(2));
}
