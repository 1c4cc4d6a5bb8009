use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn dsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dsc")).args(args).output().expect("run dsc")
}

fn ok(args: &[&str]) -> String {
    let out = dsc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn generated(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.join(name);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", path.to_str().unwrap()]);
    ok(&full);
    path
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().map_or_else(|| x.to_string(), str::to_string)).collect()
}

#[test]
fn analyze_published_surfaces() {
    let dir = tempfile::tempdir().unwrap();
    let ico = generated(dir.path(), "ico.json", &["icosahedron"]);
    let r = json(&["analyze", ico.to_str().unwrap()]);
    assert_eq!(strs(&r["h_vector"]), ["1", "9", "9", "1"]);
    assert_eq!(r["ds_symmetric"], true);
    assert_eq!(r["class_xd"]["verdict"], true);

    let m = generated(dir.path(), "m.json", &["moebius"]);
    let r = json(&["analyze", m.to_str().unwrap()]);
    assert_eq!(strs(&r["h_vector"]), ["-1", "3", "5", "1"]);
    assert_eq!(r["ds_symmetric"], false);

    let empty = dir.path().join("e.json");
    fs::write(&empty, r#"{"facets":[]}"#).unwrap();
    let r = json(&["analyze", empty.to_str().unwrap()]);
    assert_eq!((r["dimension"].as_i64(), r["euler_characteristic"].as_i64()), (Some(-1), Some(0)));
}

#[test]
fn generators() {
    let dir = tempfile::tempdir().unwrap();
    let p = generated(dir.path(), "x.json", &["cross_polytope", "4"]);
    let r = json(&["analyze", p.to_str().unwrap()]);
    assert_eq!(r["f_vector"], serde_json::json!([10, 40, 80, 80, 32]));
    let p = generated(dir.path(), "c.json", &["cycle", "5"]);
    assert_eq!(json(&["analyze", p.to_str().unwrap()])["f_vector"], serde_json::json!([5, 5]));
    let a = ok(&["generate", "erdos_renyi", "16", "0.4", "--seed", "7"]);
    let b = ok(&["generate", "erdos_renyi", "16", "0.4", "--seed", "7"]);
    assert_eq!(a, b);
    assert_ne!(a, ok(&["generate", "erdos_renyi", "16", "0.4", "--seed", "8"]));
}

#[test]
fn refinements() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = generated(dir.path(), "c4.json", &["cycle", "4"]);
    let c5 = dir.path().join("c5.json");
    ok(&["refine", "--mode", "edge", "--edge", "0,1", c4.to_str().unwrap(), "-o", c5.to_str().unwrap()]);
    let r = json(&["analyze", c5.to_str().unwrap()]);
    assert_eq!(r["f_vector"], serde_json::json!([5, 5]));
    assert_eq!(json(&["classify", c5.to_str().unwrap(), "--kind", "manifold"])["result"]["verdict"], true);

    let o = generated(dir.path(), "o.json", &["cross_polytope", "2"]);
    let o5 = dir.path().join("o5.json");
    ok(&["refine", "--mode", "edge", "--random", "5", "--seed", "3", o.to_str().unwrap(), "-o", o5.to_str().unwrap()]);
    let r = json(&["classify", o5.to_str().unwrap(), "--kind", "sphere"]);
    assert_eq!(r["dimension"], 2);
    assert_eq!(r["result"]["verdict"], true);

    let ico = generated(dir.path(), "ico.json", &["icosahedron"]);
    let b = dir.path().join("b.json");
    ok(&["refine", ico.to_str().unwrap(), "-o", b.to_str().unwrap()]);
    assert_eq!(json(&["analyze", b.to_str().unwrap()])["f_vector"], serde_json::json!([62, 180, 120]));
}

#[test]
fn operator_tables() {
    let r = json(&["operator", "--dim", "3", "--matrix", "--json"]);
    assert_eq!(
        r["matrix"],
        serde_json::json!([["1", "1", "1", "1"], ["0", "2", "6", "14"], ["0", "0", "6", "36"], ["0", "0", "0", "24"]])
    );
    let r = json(&["operator", "--dim", "4", "--invariants", "--json"]);
    let inv: Vec<Vec<String>> = r["invariants"].as_array().unwrap().iter().map(|f| strs(&f["coefficients"])).collect();
    assert_eq!(inv, [["0", "-22", "33", "-40", "45"], ["0", "0", "0", "-2", "5"]]);
    let r = json(&["operator", "--dim", "2", "--perron", "--json"]);
    assert_eq!(strs(&r["perron"]), ["1", "3", "2"]);
    let r = json(&["operator", "--dim", "2", "--apply", "8,12,6", "--times", "2", "--json"]);
    assert_eq!(r["apply"][2], serde_json::json!(["122", "336", "216"]));
}

#[test]
fn reports() {
    let dir = tempfile::tempdir().unwrap();
    let ico = generated(dir.path(), "ico.json", &["icosahedron"]);
    let r = json(&["curvature", ico.to_str().unwrap()]);
    assert_eq!(r["gauss_bonnet"], true);
    assert_eq!(r["levitt"]["1"], "1/6");
    assert!(ok(&["curvature", ico.to_str().unwrap(), "--csv"]).starts_with("vertex,K\n1,1/6\n"));

    let edge = dir.path().join("edge.json");
    fs::write(&edge, r#"{"facets":[[1,2]]}"#).unwrap();
    let r = json(&["connection", edge.to_str().unwrap()]);
    assert_eq!(r["energy"], "1");
    assert_eq!(r["hydrogen"]["identity_holds"], true);
    assert_eq!(r["log_derivative"]["chi_is_one"], true);
    assert_eq!(ok(&["connection", edge.to_str().unwrap(), "--green"]), " 0 -1  1\n-1  0  1\n 1  1 -1\n");

    let r = json(&["wu", edge.to_str().unwrap()]);
    assert_eq!(r["wu_characteristic"], -1);
    assert_eq!(r["gauss_bonnet"], true);
}

#[test]
fn experiments_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |tag: &str| {
        let prefix = dir.path().join(tag);
        let out = ok(&["experiment-roots", "--dim", "2", "--steps", "4", "--refinements", "2", "--seed", "5", "-o", prefix.to_str().unwrap()]);
        let csv = fs::read(prefix.with_extension("csv")).unwrap();
        let svg = fs::read(prefix.with_extension("svg")).unwrap();
        (out, csv, svg)
    };
    assert_eq!(run("a"), run("b"));

    let s = |tag: &str| {
        let path = dir.path().join(tag);
        let out = ok(&["experiment-search", "--n", "10", "--p", "0.3", "--trials", "300", "--seed", "1", "-o", path.to_str().unwrap()]);
        (out, fs::read(path).unwrap())
    };
    assert_eq!(s("x.csv"), s("y.csv"));

    let r = json(&["experiment-search", "--n", "4", "--exhaustive"]);
    assert_eq!(r["classes"].as_array().unwrap().len(), 1);
    let r = json(&["experiment-roots", "--f-vector", "20,30,12", "--refinements", "3"]);
    assert_eq!(r["first_all_real"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"facets\": [[1,2],\n [3,]]}").unwrap();
    let out = dsc(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(dsc(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(dsc(&["generate", "cycle", "2"]).status.code(), Some(2));

    let ico = generated(dir.path(), "ico.json", &["icosahedron"]);
    let out = Command::new(env!("CARGO_BIN_EXE_dsc"))
        .args(["refine", ico.to_str().unwrap()])
        .env("DSC_CAP_SIMPLICES", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("362"));
    assert_eq!(dsc(&["experiment-search", "--n", "8", "--exhaustive"]).status.code(), Some(3));
}
