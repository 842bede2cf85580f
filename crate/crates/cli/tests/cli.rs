use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn nbrw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbrw"))
        .args(args)
        .env_remove("NBRW_BUDGET")
        .output()
        .expect("spawn nbrw")
}

fn json(args: &[&str]) -> Value {
    let out = nbrw(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let v = jsonschema::validator_for(&schema(name)).unwrap();
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

fn residue_limit(doc: &Value, residue: usize, vertex: &str) -> String {
    doc["result"]["residue_limits"][residue]["limits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["vertex"] == vertex)
        .unwrap()["value"]
        .as_str()
        .unwrap()
        .to_string()
}

#[test]
fn butterfly_limits_from_y() {
    let doc = json(&["limits", "--builtin", "butterfly", "--from", "y", "--exact", "--format", "json"]);
    assert_eq!(doc["result"]["period"], 3);
    for r in 0..3 {
        assert_eq!(residue_limit(&doc, r, "x"), ["0", "1/2", "1/2"][r]);
    }
    assert_eq!(residue_limit(&doc, 0, "y"), "1/4");
    assert_eq!(residue_limit(&doc, 1, "y"), "1/8");
    assert_eq!(residue_limit(&doc, 2, "y"), "1/8");
}

#[test]
fn butterfly_limits_from_x() {
    let doc = json(&["limits", "--builtin", "butterfly", "--from", "x", "--exact", "--format", "json"]);
    for r in 0..3 {
        assert_eq!(residue_limit(&doc, r, "x"), ["1", "0", "0"][r]);
        assert_eq!(residue_limit(&doc, r, "y"), ["0", "1/4", "1/4"][r]);
    }
}

#[test]
fn limits_csv_has_header_and_rows() {
    let out = nbrw(&["limits", "--builtin", "petersen", "--nmax", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# nbrw "));
    assert_eq!(lines.next().unwrap(), "n,vertex,q,cesaro,target,residual");
    assert_eq!(lines.count(), 5 * 10);
}

#[test]
fn petersen_check_passes() {
    let out = nbrw(&["check", "--builtin", "petersen", "--nmax", "20", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains(",fail,"));
    assert!(text.contains("functional_equation,pass"));
}

#[test]
fn check_skips_functional_equation_on_irregular_graph() {
    let out = nbrw(&["check", "--builtin", "butterfly", "--nmax", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("functional_equation,skipped"));
}

#[test]
fn cycle_is_reducible() {
    let doc = json(&["analyze", "--builtin", "cycle:6"]);
    assert_eq!(doc["result"]["irreducible"], false);
    assert_eq!(doc["result"]["essential_classes"], 2);
    assert_eq!(doc["result"]["is_cycle"], true);
}

#[test]
fn petersen_analysis() {
    let doc = json(&["analyze", "--builtin", "petersen"]);
    let r = &doc["result"];
    assert_eq!(r["irreducible"], true);
    assert_eq!(r["num_oriented_edges"], 30);
    assert_eq!(r["bipartite"], false);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(nbrw(&["analyze", "--builtin", "no_such_graph"]).status.code(), Some(2));
    assert_eq!(nbrw(&["limits", "--builtin", "grid_Z2"]).status.code(), Some(2));
    assert_eq!(nbrw(&["amenability", "--builtin", "petersen"]).status.code(), Some(2));
    assert_eq!(nbrw(&["simulate", "--builtin", "petersen"]).status.code(), Some(2));
    assert_eq!(nbrw(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(
        nbrw(&["cogrowth", "--builtin", "butterfly", "--check-functional-equation"]).status.code(),
        Some(2)
    );
}

#[test]
fn budget_exhaustion_exits_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_nbrw"))
        .args(["spectral", "--builtin", "grid_Z2", "--exact"])
        .env("NBRW_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn graph_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nbrw"))
        .args(["analyze", "--graph", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let edges = "# two triangles sharing an edge\nedge a b\nedge b c\nedge c a\nedge a d\nedge d b\n";
    child.stdin.take().unwrap().write_all(edges.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["vertices"], 4);
    assert_eq!(doc["result"]["num_oriented_edges"], 10);
}

#[test]
fn reruns_are_byte_identical() {
    let runs = [
        vec!["simulate", "--builtin", "petersen", "--seed", "11", "--trials", "5000", "--nmax", "7"],
        vec!["simulate", "--builtin", "grid_Z2", "--seed", "3", "--trials", "2000", "--nmax", "12"],
        vec!["cogrowth", "--builtin", "free_group:2", "--nmax", "10", "--exact"],
        vec!["spectral", "--builtin", "complete:5", "--nmax", "40"],
    ];
    for args in &runs {
        let a = nbrw(args);
        let b = nbrw(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn simulation_matches_exact_distribution() {
    let doc = json(&[
        "simulate", "--builtin", "petersen", "--seed", "5", "--trials", "20000", "--nmax", "6", "--format", "json",
    ]);
    assert!(doc["result"]["total_variation"].as_f64().unwrap() < 0.03);
}

#[test]
fn cogrowth_functional_equation_trailer() {
    let out = nbrw(&[
        "cogrowth", "--builtin", "complete:4", "--nmax", "10", "--exact", "--check-functional-equation",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let trailer = text.lines().last().unwrap();
    assert!(trailer.starts_with("# functional_equation "));
    assert!(trailer.contains("\"exact_zero\":true"));
}

#[test]
fn amenability_verdicts() {
    let grid = json(&["amenability", "--builtin", "grid_Z2"]);
    assert_eq!(grid["result"]["verdict"], "consistent_amenable");
    let tree = json(&["amenability", "--builtin", "tree_regular:3"]);
    assert_eq!(tree["result"]["verdict"], "inconclusive");
    assert_eq!(tree["result"]["prerequisite"]["status"], "unverified");
}

#[test]
fn output_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("nbrw-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.json");
    let p = path.to_str().unwrap();
    assert!(nbrw(&["analyze", "--builtin", "complete:4", "--output", p]).status.success());
    let mut written: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(written["config"]["output"], p);
    written["config"]["output"] = Value::Null;
    assert_eq!(written, json(&["analyze", "--builtin", "complete:4"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_outputs_match_schemas() {
    let cases: [(&str, Vec<&str>); 9] = [
        ("analyze", vec!["analyze", "--builtin", "butterfly"]),
        ("limits", vec!["limits", "--builtin", "butterfly", "--exact", "--nmax", "12", "--format", "json"]),
        ("limits", vec!["limits", "--builtin", "complete:4", "--nmax", "12", "--format", "json"]),
        ("spectral", vec!["spectral", "--builtin", "petersen"]),
        ("spectral", vec!["spectral", "--builtin", "free_group:2", "--nmax", "30"]),
        ("cogrowth", vec!["cogrowth", "--builtin", "petersen", "--format", "json", "--check-functional-equation"]),
        ("simulate", vec!["simulate", "--builtin", "cycle:5", "--seed", "1", "--trials", "100"]),
        ("amenability", vec!["amenability", "--builtin", "free_product_z3", "--nmax", "40", "--rmax", "10"]),
        ("check", vec!["check", "--builtin", "complete_bipartite:3,3", "--nmax", "8", "--format", "json"]),
    ];
    for (name, args) in cases {
        let doc = json(&args);
        assert_valid("envelope", &doc);
        assert_valid(name, &doc["result"]);
    }
}
