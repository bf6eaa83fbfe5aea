//! End-to-end tests of the `polyknot` binary: exit codes, JSON schema, and
//! determinism of the SVG output.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_polyknot");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON: {}\n{}",
            e,
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn trefoil_json() -> &'static str {
    r#"{"f": "t^3 - 3t", "g": "t^4 - 4t^2", "h": "t^5 - 10t", "name": "trefoil"}"#
}

fn five_node_projection_json() -> &'static str {
    r#"{"f": "2 (t - 2) (t + 4) (t^2 - 11)", "g": "t (t^2 - 6) (t^2 - 16)"}"#
}

#[test]
fn verify_accepts_an_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "trefoil.json", trefoil_json());
    let out = run(&["verify", &file]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["embedding"], Value::Bool(true));
    assert_eq!(v["degree_sequence"], serde_json::json!([3, 4, 5]));
    assert_eq!(v["regular"], Value::Bool(true));
    assert_eq!(v["injective"], Value::Bool(true));
}

#[test]
fn verify_rejects_a_non_embedding_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    // all three derivatives vanish at t = 0: not a regular curve
    let file = write_file(
        dir.path(),
        "cusp.json",
        r#"{"f": "t^2", "g": "t^3", "h": "t^6"}"#,
    );
    let out = run(&["verify", &file]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["embedding"], Value::Bool(false));
    assert_eq!(v["regular"], Value::Bool(false));
}

#[test]
fn malformed_input_exits_2_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "bad.json", r#"{"f": "t^3 - "#);
    let out = run(&["verify", &file]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let missing = run(&["verify", "/nonexistent/knot.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn identify_names_the_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "trefoil.json", trefoil_json());
    let out = run(&["identify", &file]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["knot"], Value::String("3_1*".into()));
    assert_eq!(v["crossings"], serde_json::json!(3));
    assert!(v["matched_by"]
        .as_array()
        .unwrap()
        .iter()
        .any(|m| m == "jones"));
}

#[test]
fn construct_realizes_a_pattern_over_the_trefoil_projection() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "proj.json",
        r#"{"f": "t^3 - 3t", "g": "t^4 - 4t^2"}"#,
    );
    for method in ["intervals", "system"] {
        let out = run(&["construct", &file, "--pattern", "+-+", "--method", method]);
        assert_eq!(out.status.code(), Some(0), "method {}", method);
        let v = stdout_json(&out);
        assert_eq!(v["embedding"], Value::Bool(true));
        let name = v["identified"].as_str().unwrap();
        assert!(name.starts_with("3_1"), "got {}", name);
    }
}

#[test]
fn construct_realizes_the_five_crossing_twist_knot() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "proj.json", five_node_projection_json());
    let out = run(&["construct", &file, "--pattern", "-+-+-"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["identified"], Value::String("5_2".into()));
}

#[test]
fn construct_rejects_a_wrong_length_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "proj.json", five_node_projection_json());
    let out = run(&["construct", &file, "--pattern", "+-"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn obstruct_reports_the_unrealizable_degree6_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "proj.json", five_node_projection_json());
    let out = run(&["obstruct", &file, "--pattern", "-+-+-"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["obstructed"], Value::Bool(true));
    assert_eq!(v["crossings"], serde_json::json!(5));
    assert_eq!(v["rank"], serde_json::json!(4));
    assert_eq!(v["augmented_rank"], serde_json::json!(5));
    assert_eq!(v["det"], Value::String("nonzero".into()));
}

#[test]
fn octant_prints_the_leading_sign_triple() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(
        dir.path(),
        "mirror.json",
        r#"{"f": "t^3 - 3t", "g": "t^4 - 4t^2", "h": "-t^5 + 10t"}"#,
    );
    let out = run(&["octant", &file]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["e1"], serde_json::json!(1));
    assert_eq!(v["e2"], serde_json::json!(1));
    assert_eq!(v["e3"], serde_json::json!(-1));
}

#[test]
fn corpus_list_shows_all_entries() {
    let out = run(&["corpus", "--list", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), 11);
    assert!(entries.iter().any(|e| e["name"] == "8_19"));

    // human mode: a header line plus one row per entry
    let human = run(&["corpus", "--list"]);
    assert_eq!(human.status.code(), Some(0));
    let lines = String::from_utf8_lossy(&human.stdout).trim().lines().count();
    assert_eq!(lines, 12);
}

#[test]
fn plot_is_deterministic_svg() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_file(dir.path(), "trefoil.json", trefoil_json());
    let out1 = dir.path().join("a.svg");
    let out2 = dir.path().join("b.svg");
    assert_eq!(
        run(&["plot", &file, out1.to_str().unwrap()]).status.code(),
        Some(0)
    );
    assert_eq!(
        run(&["plot", &file, out2.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let a = fs::read(&out1).unwrap();
    let b = fs::read(&out2).unwrap();
    assert_eq!(a, b, "byte-identical across runs");
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("<svg"));
    assert!(text.trim_end().ends_with("</svg>"));
    // three crossings leave three gaps: four visible arcs
    assert_eq!(text.matches("<path").count(), 4);
}
