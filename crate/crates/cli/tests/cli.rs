use std::fs;
use std::path::Path;

use isg_cli::{run_cli, EXIT_ERROR, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("isg").chain(args.iter().copied());
    let code = run_cli(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn z2z_is_not_essentially_principal() {
    let (code, out, _) = run(&["analyze", "--fixture", "Z2z", "--check", "esspr"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("Z2z\n"), "{out}");
    assert!(out.contains("essentially_principal: false (criterion false, direct false)"), "{out}");
    assert!(out.contains("consistency: 13/13 checks pass"), "{out}");
}

#[test]
fn i2_json_is_valid_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(run(&["analyze", "--fixture", "I2", "--json", path_str(&a)]).0, EXIT_OK);
    assert_eq!(run(&["analyze", "--fixture", "I2", "--json", path_str(&b)]).0, EXIT_OK);
    let first = fs::read_to_string(&a).unwrap();
    assert_eq!(first, fs::read_to_string(&b).unwrap());
    let doc: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["instance"]["order"], 7);
    assert_eq!(doc["instance"]["spectrum_size"], 2);
    assert_eq!(doc["instance"]["arrows"], 4);
    assert!(doc.get("timing_ms").is_none());
}

#[test]
fn timing_is_opt_in() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    assert_eq!(run(&["analyze", "--fixture", "B2", "--timing", "--json", path_str(&path)]).0, EXIT_OK);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(doc["timing_ms"].is_u64());
}

#[test]
fn corpus_runs_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let (code, out, _) = run(&["analyze", "--corpus", "25", "--seed", "7", "--json", path_str(&a)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("25/25 equivalence checks pass\n"), "{out}");
    let (code, again, _) = run(&["analyze", "--corpus", "25", "--seed", "7", "--json", path_str(&b)]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, again);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let docs: serde_json::Value = serde_json::from_str(&fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(docs.as_array().unwrap().len(), 25);
}

#[test]
fn bad_arguments_are_usage_errors() {
    assert_eq!(run(&["analyze"]).0, EXIT_USAGE);
    assert_eq!(run(&["analyze", "--fixture", "I2", "--check", "nope"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
}

#[test]
fn parse_errors_report_the_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.isg");
    fs::write(&path, "semigroup Bad\ntable 2 zero 0\n0 0\n0 7\n").unwrap();
    let (code, _, err) = run(&["analyze", path_str(&path)]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn empty_spectrum_writes_an_error_document() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("zero.isg");
    let json = dir.path().join("zero.json");
    fs::write(&input, "semigroup Zero\ntable 1 zero 0\n0\n").unwrap();
    let (code, _, _) = run(&["analyze", path_str(&input), "--json", path_str(&json)]);
    assert_eq!(code, EXIT_ERROR);
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["name"], "Zero");
    assert_eq!(doc["error"]["code"], "EmptySpectrum");
}

#[test]
fn b2_dot_has_two_units_and_two_edges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.dot");
    assert_eq!(run(&["analyze", "--fixture", "B2", "--dot", path_str(&path)]).0, EXIT_OK);
    let dot = fs::read_to_string(&path).unwrap();
    let nodes = dot.lines().filter(|l| l.trim_start().starts_with('u') && !l.contains("->")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    assert_eq!((nodes, edges), (2, 2), "{dot}");
}

#[test]
fn generator_files_analyze_like_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i2.isg");
    fs::write(&path, "semigroup I2gen\npoints 2\ngen t = 1 0\ngen p = 0 _\n").unwrap();
    let (code, out, _) = run(&["analyze", path_str(&path)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("instance: order 7"), "{out}");
}
