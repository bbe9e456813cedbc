use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const SQUARE: &str = r#"{
  "n": 2,
  "observables": ["XI", "IX", "XX", "IZ", "ZI", "ZZ", "XZ", "ZX", "YY"],
  "contexts": [
    {"members": [0, 1, 2], "sign": 1},
    {"members": [3, 4, 5], "sign": 1},
    {"members": [6, 7, 8], "sign": 1},
    {"members": [0, 3, 6], "sign": 1},
    {"members": [1, 4, 7], "sign": 1},
    {"members": [2, 5, 8], "sign": -1}
  ]
}"#;

fn ksproof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ksproof"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn fixture(dir: &Path, name: &str) -> PathBuf {
    let o = ksproof(&["gen", "fixture", name]);
    assert!(o.status.success(), "{}", stderr(&o));
    write(dir, &format!("{name}.json"), &stdout(&o))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_star_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let o = ksproof(&["gen", "star", "--N", "3"]);
    assert!(o.status.success());
    let path = write(dir.path(), "star.json", &stdout(&o));
    let o = ksproof(&["verify", s(&path)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["valid"], true);
}

#[test]
fn wrong_sign_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let bad = SQUARE.replace("\"sign\": -1", "\"sign\": 1");
    let path = write(dir.path(), "bad.json", &bad);
    let o = ksproof(&["verify", s(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(serde_json::from_str::<Value>(&stdout(&o)).unwrap()["valid"], false);
}

#[test]
fn malformed_input_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "junk.json", "{\"n\": 2");
    assert_eq!(ksproof(&["verify", s(&path)]).status.code(), Some(2));
    assert_eq!(ksproof(&["gen", "fixture", "nonesuch"]).status.code(), Some(2));
}

#[test]
fn ghz_check_and_multipartite_on_four_qubits() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = fixture(dir.path(), "table1-left");
    let o = ksproof(&["ghz-check", s(&t1)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(serde_json::from_str::<Value>(&stdout(&o)).unwrap()["infeasible"], true);
    let o = ksproof(&["multipartite", s(&t1)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(serde_json::from_str::<Value>(&stdout(&o)).unwrap()["genuine"], true);
}

#[test]
fn measuring_two_qubits_leaves_a_bell_state() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = fixture(dir.path(), "table1-left");
    let o = ksproof(&["measure", s(&t1), "--qubits", "1,2", "--outcome", "00"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["probability"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(v["residual"]["verdict"], "bell-state");
}

#[test]
fn bell_terms_of_four_qubit_state() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = fixture(dir.path(), "table1-left");
    let o = ksproof(&["--ascii", "bell", s(&t1)]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn kite_graph_has_two_cliques_one_bold() {
    let dir = tempfile::tempdir().unwrap();
    let kite = fixture(dir.path(), "kite-quadruples");
    let o = ksproof(&["export-graph", s(&kite)]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert_eq!(dot.lines().filter(|l| l.contains("[label=")).count(), 6);
    assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 12);
    assert_eq!(dot.matches("style=bold").count(), 1);
}

#[test]
fn empty_system_has_no_graph() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.json", r#"{"n": 2, "observables": [], "contexts": []}"#);
    let o = ksproof(&["export-graph", s(&path)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no contexts"));
}

#[test]
fn square_census_catalog_and_symbol() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "square.json", SQUARE);
    let out = dir.path().join("census.json");
    let catalog = dir.path().join("catalog.jsonl");
    let o = ksproof(&[
        "parity-census",
        s(&square),
        "--brute-force-check",
        "--catalog",
        s(&catalog),
        "--out",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["total"], 512);
    assert_eq!(v["H"], 9);
    assert_eq!(v["two_power_H_holds"], true);
    assert_eq!(v["brute_force_check"]["agrees"], true);
    let counted: u64 = v["types"].as_array().unwrap().iter().map(|t| t["count"].as_u64().unwrap()).sum();
    assert_eq!(counted, 512);

    let manifest: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("census.json.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["inputs"].as_object().unwrap().len(), 1);
    assert_eq!(manifest["outputs"].as_object().unwrap().len(), 2);

    let lines: Vec<Value> = std::fs::read_to_string(&catalog)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 512);
    let first = &lines[0];
    let system: Value = serde_json::from_str(SQUARE).unwrap();
    let proof = serde_json::json!({ "bases": first["bases"], "system": system });
    let proof_path = write(dir.path(), "proof.json", &proof.to_string());
    let o = ksproof(&["symbol", s(&proof_path)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let sym: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(sym["symbol"], first["symbol"]);
    assert_eq!(sym["critical"], true);
}

#[test]
fn census_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "square.json", SQUARE);
    let a = ksproof(&["parity-census", s(&square)]);
    let b = ksproof(&["--workers", "1", "parity-census", s(&square)]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn symbol_rejects_non_proof() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "square.json", SQUARE);
    let proof = write(dir.path(), "proof.json", r#"{"bases": [0]}"#);
    let o = ksproof(&["symbol", s(&proof), "--system", s(&square)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn kernel_cap_is_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "square.json", SQUARE);
    let o = ksproof(&["--kernel-cap", "2", "parity-census", s(&square)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn dense_cap_is_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = fixture(dir.path(), "table1-left");
    let o = ksproof(&["--dense-cap", "3", "state", s(&t1)]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn config_file_sets_caps_and_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let square = write(dir.path(), "square.json", SQUARE);
    let cfg = write(dir.path(), "caps.toml", "kernel_cap = 2\n");
    let o = ksproof(&["--config", s(&cfg), "parity-census", s(&square)]);
    assert_eq!(o.status.code(), Some(3));
    let cfg = write(dir.path(), "bad.toml", "threads = 2\n");
    let o = ksproof(&["--config", s(&cfg), "parity-census", s(&square)]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corrupted_fixture_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let t1 = fixture(dir.path(), "table1-left");
    let text = std::fs::read_to_string(&t1).unwrap().replacen("ZZZZ", "ZZZX", 1);
    std::fs::write(&t1, text).unwrap();
    let o = ksproof(&["reproduce-paper", "--fixtures", s(dir.path())]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("table1-left.json"), "{}", stderr(&o));
}

#[test]
fn search_completes_square_shape() {
    let dir = tempfile::tempdir().unwrap();
    let seed = write(dir.path(), "seed.json", r#"{"n": 2, "observables": [], "contexts": []}"#);
    let o = ksproof(&["gen", "complete", s(&seed), "--shape", "3,3,3,3,3,3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v["systems"].as_array().unwrap().is_empty());
}
