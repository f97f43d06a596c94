use std::process::Command;

use serde_json::{json, Value};

fn schema(name: &str) -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/");
    let text = std::fs::read_to_string(format!("{path}{name}")).expect("schema file");
    jsonschema::validator_for(&serde_json::from_str(&text).expect("schema is JSON")).expect("valid schema")
}

fn run(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_skewcat"))
        .args(args)
        .env_remove("SKEWCAT_MAX_DIM")
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?}");
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn builtins() -> Vec<String> {
    let out = Command::new(env!("CARGO_BIN_EXE_skewcat")).arg("list").output().unwrap();
    String::from_utf8(out.stdout).unwrap().lines().map(str::to_string).collect()
}

#[test]
fn exported_instances_match_the_schema() {
    let v = schema("instance.schema.json");
    for name in builtins() {
        let inst = run(&["export", "--builtin", &name]);
        let errors: Vec<String> = v.iter_errors(&inst).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
    }
}

#[test]
fn reports_match_the_schema() {
    let v = schema("report.schema.json");
    for name in builtins() {
        let report = run(&["analyze", "--builtin", &name]);
        let errors: Vec<String> = v.iter_errors(&report).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{name}: {errors:?}");
    }
}

#[test]
fn schema_rejects_stray_fields() {
    let v = schema("instance.schema.json");
    let mut inst = run(&["export", "--builtin", "swap"]);
    assert!(v.is_valid(&inst));
    inst["extra"] = json!(1);
    assert!(!v.is_valid(&inst));
    let mut report = run(&["analyze", "--builtin", "swap"]);
    report["witnesses"]["simple"] = json!({"kind": "radical", "basis": []});
    assert!(!schema("report.schema.json").is_valid(&report));
}
