use std::process::Command;

use vword::cli::{run, EXIT_ERROR, EXIT_NOT_IN_WP, EXIT_OK};
use vword::{Dpda, GeneratingSet};

fn vword(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vword").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn decide_trivial_word() {
    let (code, out, _) = vword(&["decide", "--gens", "higman", "g1 g1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "in_wp: true\n");
}

#[test]
fn decide_non_trivial_word_prints_witness() {
    let (code, out, _) = vword(&["decide", "--gens", "higman", "g1", "--format", "json"]);
    assert_eq!(code, EXIT_NOT_IN_WP);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["in_wp"], false);
    assert_eq!(v["witness"]["rotation_index"], 0);
    assert_eq!(v["witness"]["z"], "00");
}

#[test]
fn decide_empty_word() {
    let (code, out, _) = vword(&["decide", "--gens", "higman", ""]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("in_wp: true"));
}

#[test]
fn decide_compact_and_word_file() {
    let dir = tempfile::tempdir().unwrap();
    let gens = dir.path().join("gens.json");
    std::fs::write(&gens, r#"{"generators": {"a": [["0","1"],["1","0"]], "b": [["00","00"],["01","1"],["1","01"]]}}"#).unwrap();
    let g = gens.to_str().unwrap();
    assert_eq!(vword(&["decide", "--gens", g, "--compact", "abba"]).0, EXIT_OK);
    assert_eq!(vword(&["decide", "--gens", g, "--compact", "ab"]).0, EXIT_NOT_IN_WP);

    let word = dir.path().join("word.txt");
    std::fs::write(&word, "a b\nb a\n").unwrap();
    assert_eq!(vword(&["decide", "--gens", g, "--word-file", word.to_str().unwrap()]).0, EXIT_OK);
}

#[test]
fn seeded_random_words_are_reproducible() {
    let args = ["decide", "--random", "40", "--seed", "17", "--format", "json"];
    let (c1, a, _) = vword(&args);
    let (c2, b, _) = vword(&args);
    assert_eq!((c1, &a), (c2, &b));
    let (_, par, _) = vword(&["decide", "--random", "40", "--seed", "17", "--format", "json", "--parallel"]);
    assert_eq!(a, par);
}

#[test]
fn oracle_reports_tables() {
    let (code, out, _) = vword(&["oracle", "--gens", "higman", "g1 g1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("table: {ε→ε}"));
    assert!(out.contains("identity: true"));

    let (_, out, _) = vword(&["oracle", "g2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let expected: serde_json::Value = serde_json::json!([["1", "01"], ["00", "00"], ["01", "1"]]);
    assert_eq!(v["table"], expected);

    let (_, out, _) = vword(&["oracle", "g1 g3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["identity"], false);
    assert!(v["maxlen"].as_u64().unwrap() <= 4);
}

#[test]
fn bench_with_zero_trials() {
    let (code, out, _) = vword(&["bench", "--trials", "0", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 0);
}

#[test]
fn bench_rejects_unsorted_lengths() {
    let (code, _, err) = vword(&["bench", "--lengths", "64,32"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("ascending"));
}

#[test]
fn export_json_reloads_without_conflicts() {
    let (code, out, _) = vword(&["export-lz", "--z", "00", "--gens", "higman", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let m = Dpda::from_json(&out).unwrap();
    assert_eq!(m.def().states, ["q0", "q1", "qa"]);
    assert!(m.validate_determinism().is_empty());
}

#[test]
fn export_dot_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l01.dot");
    let (code, out, _) = vword(&["export-lz", "--z", "01", "--format", "dot", "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let dot = std::fs::read_to_string(path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("\"qa\" [shape=doublecircle]"));
}

#[test]
fn export_rejects_bad_z() {
    let (code, _, err) = vword(&["export-lz", "--z", ""]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("non-empty"));
    assert_eq!(vword(&["export-lz", "--z", "012"]).0, EXIT_ERROR);
}

#[test]
fn check_suites() {
    let (code, out, _) = vword(&["check", "oracle-agreement", "--max-len", "4"]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, out, _) = vword(&["check", "lemmas", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["passed"], true);
    let (code, _, err) = vword(&["check", "bogus"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("unknown suite"));
}

#[test]
fn malformed_input_is_an_error_not_a_panic() {
    assert_eq!(vword(&["decide", "g1 g9"]).0, EXIT_ERROR);
    assert_eq!(vword(&["decide"]).0, EXIT_ERROR);
    assert_eq!(vword(&["decide", "--gens", "/nonexistent.json", "g1"]).0, EXIT_ERROR);
    assert_eq!(vword(&["frobnicate"]).0, EXIT_ERROR);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"generators": {"a": [["0","1"],["01","0"]]}}"#).unwrap();
    let (code, _, err) = vword(&["decide", "--gens", bad.to_str().unwrap(), "a"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.contains("generator \"a\""), "{err}");
}

#[test]
fn help_exits_cleanly() {
    let (code, out, _) = vword(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("decide"));
}

#[test]
fn bundled_file_matches_builtin() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/higman.json");
    assert_eq!(GeneratingSet::load(path).unwrap(), GeneratingSet::higman());
    let (code, _, _) = vword(&["decide", "--gens", path, "g3 g3"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn binary_exit_codes_and_eps_budget_override() {
    let bin = env!("CARGO_BIN_EXE_vword");
    let status = Command::new(bin).args(["decide", "g1"]).status().unwrap();
    assert_eq!(status.code(), Some(EXIT_NOT_IN_WP));

    // this word takes at least one ε-move, so a zero budget must fail
    let word = "g2 g3 g3 g2";
    let ok = Command::new(bin).args(["decide", word]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let starved = Command::new(bin).env("VWORD_EPS_BUDGET", "0").args(["decide", word]).output().unwrap();
    assert_eq!(starved.status.code(), Some(EXIT_ERROR));
    assert!(String::from_utf8_lossy(&starved.stderr).contains("budget"));
}
