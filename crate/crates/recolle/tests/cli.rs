//! Command-line behavior: exit codes and output formats.

use std::process::Command;

fn recolle(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_recolle"))
        .args(args)
        .output()
        .expect("spawn recolle")
}

#[test]
fn unknown_example_is_a_config_error() {
    let out = recolle(&["verify", "--example", "no-such-thing"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown example"));
}

#[test]
fn malformed_object_json_is_a_config_error() {
    let out = recolle(&[
        "derived",
        "--functor",
        "i-star",
        "--object",
        "{\"dims\": [1]}",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn passing_suite_exits_zero_with_text_table() {
    let out = recolle(&[
        "verify",
        "--example",
        "quad-free",
        "--max-dim",
        "1",
        "1",
        "--max-dim-aa",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("axiom_v_embedding_onto_kernel"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn json_format_is_valid_and_sorted() {
    let out = recolle(&[
        "classify",
        "--example",
        "quad-vect",
        "--max-dim",
        "1",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn derived_dimensions_match_known_values() {
    // Second left-derived value on the embedded line: zero in the free
    // quadratic category, one-dimensional in the stricter one.
    let free = recolle(&[
        "derived", "--example", "quad-free", "--functor", "i-star",
        "--object", "i-sub-f2", "--degree", "2", "--format", "json",
    ]);
    let strict = recolle(&[
        "derived", "--example", "quad-vect", "--functor", "i-star",
        "--object", "i-sub-f2", "--degree", "2", "--format", "json",
    ]);
    let dim = |out: &std::process::Output| {
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v["checks"][0]["dims"][0].as_u64().unwrap()
    };
    assert_eq!(dim(&free), 0);
    assert_eq!(dim(&strict), 1);
}

#[test]
fn budget_env_var_is_recorded_in_reports() {
    let out = Command::new(env!("CARGO_BIN_EXE_recolle"))
        .args(["classify", "--example", "quad-free", "--max-dim", "1", "--format", "json"])
        .env("RECOLLE_BUDGET", "12")
        .output()
        .expect("spawn recolle");
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["budget"], 12);
}

#[test]
fn inline_object_json_roundtrips_through_derived() {
    // The witness object (dims (2,1), H = [1 0], P = (0,1)^T).
    let out = recolle(&[
        "derived",
        "--example",
        "quad-free",
        "--functor",
        "i-shriek",
        "--object",
        "{\"dims\":[2,1],\"arrows\":[[1,0],[0,1]]}",
        "--degree",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}
