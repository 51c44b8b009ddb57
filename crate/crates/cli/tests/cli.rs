use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn bouquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bouquet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn graver_of_the_monomial_curve() {
    let out = bouquet(&["graver", path(&data("monomial_curve.mat"))]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("7 3\n"));
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().any(|l| l == "3 -1 -1"));
}

#[test]
fn json_carries_the_text_numbers_and_indispensable_flags() {
    let file = data("monomial_curve.mat");
    let text = stdout(&bouquet(&["graver", path(&file)]));
    let j = json(&bouquet(&["--format", "json", "graver", path(&file)]));
    let rows: Vec<String> = j["elements"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            e["vector"]
                .as_array()
                .unwrap()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    assert_eq!(rows, text.lines().skip(1).collect::<Vec<_>>());
    let flagged = j["elements"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["indispensable"] == true)
        .count();
    assert_eq!(flagged, 3);
}

#[test]
fn encode01_reproduces_the_expected_matrix() {
    let expected = fs::read_to_string(data("encode01_expected.mat")).unwrap();
    let out = bouquet(&["construct", "encode01", path(&data("encode01_input.mat"))]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), expected);

    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("enc.mat");
    let out = bouquet(&[
        "construct",
        "encode01",
        path(&data("encode01_input.mat")),
        "--out",
        path(&target),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(target).unwrap(), expected);
}

#[test]
fn classify_fan_graph_meets_all_three_conditions() {
    let out = bouquet(&["--format", "json", "classify", path(&data("fan.mat"))]);
    assert_eq!(out.status.code(), Some(0));
    let j = json(&out);
    for key in ["cond_a", "cond_b", "cond_c", "consistent", "conclusive"] {
        assert_eq!(j["lawrence"][key], Value::Bool(true), "{key}");
    }
    assert_eq!(j["lawrence"]["graver_ab_size"], 15);
    assert_eq!(j["lawrence"]["S"].as_array().unwrap().len(), 6);
}

#[test]
fn malformed_rows_are_reported_by_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.mat");
    fs::write(&file, "2 2\n1 0\n0\n").unwrap();
    let out = bouquet(&["graver", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(
        err.contains("line 3: row 2: expected 2 entries, found 1"),
        "{err}"
    );
}

#[test]
fn files_are_normalized_on_the_way_through() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("messy.hyp");
    fs::write(&file, "\n10   15\n1 2\n3 2\n 3 4\n1 4\n1 3\n1 5\n5 6\n7 6\n1 7\n1 6\n1 8\n9 8\n9 10\n1 10\n\n1 9\n").unwrap();
    let out = bouquet(&["incidence", path(&file)]);
    assert_eq!(stdout(&out), fs::read_to_string(data("fan.mat")).unwrap());
}

#[test]
fn truncated_fibers_exit_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("line.mat");
    fs::write(&file, "1 2\n1 -1\n").unwrap();
    let out = bouquet(&[
        "--format",
        "json",
        "--cap-fiber",
        "3",
        "fiber",
        path(&file),
        "1,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let j = json(&out);
    assert_eq!(j["complete"], false);
    assert!(j["inconclusive"].is_string());
}

#[test]
fn lift_and_unlift_are_inverse() {
    let file = data("five_by_seven.mat");
    let up = bouquet(&["lift", path(&file), "1,-1,0,0"]);
    assert!(up.status.success());
    let lifted = stdout(&up);
    assert_eq!(lifted, "1 -1 0 0 -1 1 0\n");
    let down = bouquet(&["unlift", path(&file), lifted.trim()]);
    assert_eq!(stdout(&down), "1 -1 0 0\n");
    assert_eq!(
        bouquet(&["unlift", path(&file), "1,0,0,0,0,0,0"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn witness_files_are_written_with_a_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("h3");
    let out = bouquet(&["construct", "witness", "2", "--out", path(&prefix)]);
    assert!(out.status.success());
    let hyp = fs::read_to_string(dir.path().join("h3.hyp")).unwrap();
    assert!(hyp.starts_with("9 12\n"));
    let mat = fs::read_to_string(dir.path().join("h3.mat")).unwrap();
    assert!(mat.starts_with("9 12\n"));
    let witness = fs::read_to_string(dir.path().join("h3.witness")).unwrap();
    assert_eq!(witness, "1 12\n1 -1 -1 1 -1 -1 1 -1 -1 1 1 1\n");
}

#[test]
fn sunflowers_with_a_shared_core_give_a_monomial_curve() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("s");
    let out = bouquet(&[
        "construct",
        "sunflower",
        "--cores",
        "1;1;1",
        "--petals",
        "3,4,5",
        "--out",
        path(&prefix),
    ]);
    assert!(out.status.success());
    let j = json(&bouquet(&[
        "--format",
        "json",
        "bouquets",
        path(&dir.path().join("s.mat")),
    ]));
    let firsts: Vec<i64> = j["bouquets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["a"][0].as_i64().unwrap())
        .collect();
    assert_eq!(firsts, vec![3, 4, 5]);
}

#[test]
fn lawrence_spec_files_build_their_matrix() {
    let out = bouquet(&["construct", "lawrence", path(&data("lawrence.spec"))]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3 4\n3 0 0 -4\n-1 1 0 0\n0 0 1 2\n");
}

#[test]
fn oracle_agrees_on_the_monomial_curve() {
    let out = bouquet(&["oracle", path(&data("monomial_curve.mat"))]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("FAILED"));
}

#[test]
fn s_lawrence_uses_one_based_sets() {
    let file = data("monomial_curve.mat");
    let j = json(&bouquet(&[
        "--format",
        "json",
        "--set",
        "1,2,3",
        "classify",
        path(&file),
    ]));
    assert_eq!(j["s_lawrence"]["S"], serde_json::json!([1, 2, 3]));
    assert!(j["s_lawrence"]["verdict"].is_boolean());
    assert_eq!(
        bouquet(&["--set", "4", "classify", path(&file)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn searches_are_reproducible() {
    let args = [
        "--seed",
        "7",
        "search-open-q4",
        "--trials",
        "30",
        "--rows",
        "2",
        "--cols",
        "5",
    ];
    let first = bouquet(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&bouquet(&args)));
    assert!(stdout(&first).starts_with("seed 7 trials 30 "));
}
