use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn realexp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realexp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = realexp(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn run_ok(args: &[&str]) {
    let out = realexp(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn tmp(name: &str) -> String {
    std::env::temp_dir()
        .join(format!("realexp-cli-{}-{name}", std::process::id()))
        .display()
        .to_string()
}

#[test]
fn open_koszul_homology_is_the_origin() {
    let v = json_ok(&["homology", "--construct", "open-koszul", "--n", "2"]);
    let cells = v["result"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["cell"], "{0} x {0}");
    assert_eq!(cells[0]["homology"]["0"], 1);
    let p = &v["provenance"];
    assert_eq!(p["schema_version"], "1");
    assert_eq!(p["field"], "q");
    assert_eq!(p["parameters"]["n"], 2);
}

#[test]
fn tor_top_degree() {
    let v = json_ok(&["tor", "--n", "3", "--eps", "1,1,1", "--i", "3"]);
    assert_eq!(v["result"]["dim"], 1);
    let v = json_ok(&["tor", "--n", "3", "--eps", "1", "--i", "2"]);
    assert_eq!(v["result"]["dim"], 3);
}

#[test]
fn dense_group_queries() {
    let file = data("dense.json");
    let v = json_ok(&["group", "ray", "--file", &file, "--axis", "y"]);
    assert_eq!(v["result"]["generators"], serde_json::json!(["2", "e"]));
    let v = json_ok(&["group", "open-cone", "--file", &file, "--vector", "1,1"]);
    assert_eq!(v["result"]["in_positive_cone"], true);
    assert_eq!(v["result"]["in_open_cone"], false);
    let v = json_ok(&["group", "member", "--file", &file, "--vector", "0,1"]);
    assert_eq!(v["result"]["member"], false);
}

#[test]
fn outputs_are_byte_identical() {
    let args = [
        "homology",
        "--construct",
        "orthant",
        "--n",
        "2",
        "--sigma",
        "1,0",
        "--depth",
        "3",
    ];
    let a = realexp(&args);
    let b = realexp(&[&args[..], &["--jobs", "1"]].concat());
    assert!(a.status.success());
    // --jobs is not part of the parameters, so the bytes must agree
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_and_grid_formats() {
    let out = realexp(&[
        "homology",
        "--construct",
        "open-koszul",
        "--n",
        "1",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# {"));
    assert!(text.contains("cell,degree,dim\n\"{0}\",0,1"));
    let out = realexp(&[
        "homology",
        "--construct",
        "open-koszul",
        "--n",
        "2",
        "--format",
        "grid",
    ]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("0:1"));
    // formats a command cannot produce are errors
    let out = realexp(&[
        "tor", "--n", "1", "--eps", "1", "--i", "0", "--format", "csv",
    ]);
    assert!(!out.status.success());
}

#[test]
fn errors_are_json_with_nonzero_exit() {
    let out = realexp(&["tor", "--n", "2", "--eps", "0,1", "--i", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "invalid_parameter");
    let out = realexp(&["group", "ray", "--file", "/nonexistent.json", "--axis", "x"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(serde_json::from_slice::<Value>(&out.stderr).is_ok());
}

#[test]
fn certificates_round_trip_and_detect_tampering() {
    let path = tmp("cert.json");
    run_ok(&["ext-cert", "--n", "2", "--k-max", "4", "--output", &path]);
    let v = json_ok(&["ext-cert", "--verify", &path]);
    assert_eq!(v["result"]["verified"], true);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["result"]["status"], "verified-up-to-4");
    doc["result"]["components"][3]["ranks"] = serde_json::json!([1, 2]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = realexp(&["ext-cert", "--verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    let _ = std::fs::remove_file(&path);
}

#[test]
fn construct_then_homology_from_file() {
    let path = tmp("koszul.json");
    run_ok(&[
        "construct",
        "--kind",
        "koszul",
        "--n",
        "2",
        "--eps",
        "1/2,pi",
        "--output",
        &path,
    ]);
    let v = json_ok(&["homology", "--file", &path]);
    assert_eq!(v["result"]["cells"].as_array().unwrap().len(), 4);
    let _ = std::fs::remove_file(&path);
}

#[test]
fn presolve_reports_exactness() {
    let v = json_ok(&["presolve", "--n", "2", "--module", "k", "--depth", "3"]);
    assert_eq!(v["result"]["exact_on_stabilized"], true);
    assert!(v["result"]["length"].as_u64().unwrap() <= 3);
}

#[test]
fn module_files_are_accepted() {
    let v = json_ok(&[
        "presolve",
        "--n",
        "1",
        "--module-file",
        &data("interval.json"),
        "--depth",
        "3",
    ]);
    assert_eq!(v["result"]["exact_on_stabilized"], true);
}

#[test]
fn total_koszul_homology() {
    let v = json_ok(&[
        "homology",
        "--construct",
        "total-koszul",
        "--n",
        "1",
        "--module",
        "R",
        "--window",
        "2",
    ]);
    assert_eq!(v["result"]["positive_failures"], serde_json::json!([]));
}

#[test]
fn selftest_surfaces_corruption() {
    let out = realexp(&["selftest", "--only", "1,2,7"]);
    assert!(out.status.success());
    let out = realexp(&["selftest", "--only", "7", "--corrupt", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["failed"], serde_json::json!([7]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("criterion  7"));
}
