use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(rel)
}

fn tangentad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tangentad"))
        .args(args)
        .env_remove("TANGENTAD_BOUNDS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn failing_ids(doc: &Value) -> Vec<String> {
    doc["diagrams"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|d| d["status"] == "fail")
        .map(|d| d["diagram-id"].as_str().unwrap().to_string())
        .collect()
}

/// `{"base": n, "section": ...}` for `x ↦ (x, v̂(x))` with linear `v̂ = A x`.
fn linear_field_json(a: &[[i64; 2]; 2]) -> String {
    let var = |j: usize| if j == 0 { "[1, 0]" } else { "[0, 1]" };
    let mut comps: Vec<String> = (0..2).map(|j| format!("[[1, 1, {}]]", var(j))).collect();
    for row in a {
        let terms: Vec<String> =
            (0..2).filter(|&j| row[j] != 0).map(|j| format!("[{}, 1, {}]", row[j], var(j))).collect();
        comps.push(format!("[{}]", terms.join(", ")));
    }
    format!(
        r#"{{"base": 2, "section": {{"source_dim": 2, "target_dim": 4, "components": [{}]}}}}"#,
        comps.join(", ")
    )
}

#[test]
fn weil_suite_passes() {
    let out = tangentad(&["check", "--suite", "weil"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["tool"], "tangentad");
}

#[test]
fn seeded_poly_suite_is_byte_identical() {
    let args = ["check", "--suite", "poly", "--seed", "7", "--samples", "50"];
    let (a, b) = (tangentad(&args), tangentad(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
}

#[test]
fn different_seeds_give_different_samples() {
    let a = tangentad(&["check", "--suite", "poly", "--seed", "1", "--samples", "5"]);
    let b = tangentad(&["check", "--suite", "poly", "--seed", "2", "--samples", "5"]);
    assert_ne!(json(&a)["diagrams"], json(&b)["diagrams"]);
}

#[test]
fn c_identity_mutation_fails_lc_exchange() {
    let out = tangentad(&["check", "--suite", "poly", "--mutate", "c-identity"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(failing_ids(&json(&out)).iter().any(|id| id == "tangent/lc-exchange"));
}

#[test]
fn unknown_mutation_is_an_input_error() {
    let out = tangentad(&["check", "--suite", "poly", "--mutate", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("c-identity"));
}

#[test]
fn bracket_of_one_and_x_is_one() {
    let one = data("fields/one.json");
    let x = data("fields/x.json");
    let out = tangentad(&["bracket", one.to_str().unwrap(), x.to_str().unwrap(), "--oracle", "classical"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["bracket"], serde_json::json!(["1"]));
    assert_eq!(doc["result"]["classical"], serde_json::json!(["1"]));
}

#[test]
fn bracket_with_itself_is_zero() {
    let x = data("fields/plane.json");
    let out = tangentad(&["bracket", x.to_str().unwrap(), x.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["bracket"], serde_json::json!(["0", "0"]));
}

#[test]
fn bracket_of_linear_fields_is_the_commutator() {
    // A = [[1, 2], [0, 1]], B = [[0, 1], [1, 0]]; BA − AB = [[-2, 0], [0, 2]].
    let dir = tempfile::tempdir().unwrap();
    let (pa, pb) = (dir.path().join("a.json"), dir.path().join("b.json"));
    std::fs::write(&pa, linear_field_json(&[[1, 2], [0, 1]])).unwrap();
    std::fs::write(&pb, linear_field_json(&[[0, 1], [1, 0]])).unwrap();
    let out = tangentad(&["bracket", pa.to_str().unwrap(), pb.to_str().unwrap(), "--oracle", "classical"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["bracket"], serde_json::json!(["-2*x0", "2*x1"]));
}

#[test]
fn bracket_base_mismatch_is_an_input_error() {
    let out = tangentad(&[
        "bracket",
        data("fields/one.json").to_str().unwrap(),
        data("fields/plane.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pie_on_terminal_has_one_object() {
    let out = tangentad(&["pie", data("categories/terminal.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["isomorphism"]["terminal"]["size"], 1);
}

#[test]
fn pie_on_arrow_passes() {
    let out = tangentad(&["pie", data("categories/arrow.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["failed"], 0);
}

#[test]
fn six_objects_exceed_the_default_bound() {
    let out = tangentad(&["pie", data("oversize/discrete6.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bounds_env_var_admits_six_objects() {
    let out = Command::new(env!("CARGO_BIN_EXE_tangentad"))
        .args(["pie", data("oversize/discrete6.json").to_str().unwrap()])
        .env("TANGENTAD_BOUNDS", "objects=6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn malformed_files_are_input_errors() {
    for f in ["malformed/truncated.json", "malformed/broken_identity.json"] {
        let out = tangentad(&["pie", data(f).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{f}");
        assert!(!out.stderr.is_empty());
    }
    let out = tangentad(&["check", "--model", "poly", "--input", data("malformed/truncated.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonpositive_tolerance_is_rejected() {
    let out = tangentad(&["check", "--suite", "smooth", "--tolerance", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rational_input_reports_restriction() {
    let out = tangentad(&["restriction", "--input", data("rational/reciprocal.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["result"]["total"], false);
    assert_eq!(doc["result"]["restriction"], "ℚ^1 ⇀ ℚ^1: (x0) on {x0}");
}

#[test]
fn monad_mutation_fails() {
    let out = tangentad(&["monad", "--mutate", "alpha-drop-monoid-slot", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_report_and_prints_a_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = tangentad(&["weil", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["summary"]["failed"], 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("report written to"));
}

#[test]
fn pushforward_along_writer_is_a_field() {
    let out = tangentad(&["pushforward", data("fields/x.json").to_str().unwrap(), "--monoid-dim", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["field"]["base"], 3);
}
