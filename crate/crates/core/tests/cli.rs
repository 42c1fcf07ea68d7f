use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lf-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn generate_johns_has_eight_cycles() {
    let out = run(&["generate", "johns", "--genus", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], "lf-forge/lefschetz-fibration/v1");
    assert_eq!(doc["cycles"].as_array().unwrap().len(), 8);
    assert_eq!(doc["order"][0], "a1");
}

#[test]
fn generate_sphere_has_two_cycles() {
    let out = run(&["generate", "sphere"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cycles"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["generate", "sphere", "--genus", "2"]).status.code(), Some(2));
}

#[test]
fn batch_generation_writes_one_file_per_genus() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out");
    let out = run(&[
        "generate",
        "ishikawa",
        "--genus",
        "0..3",
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut names: Vec<String> = std::fs::read_dir(&target)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "ishikawa-g0.json",
            "ishikawa-g1.json",
            "ishikawa-g2.json",
            "ishikawa-g3.json"
        ]
    );
    // Files are valid fibration documents that verify.
    let file = target.join("ishikawa-g2.json");
    let v = run(&["verify", "--input", file.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["verify", "--genus", "0..2"]);
    let b = run(&["verify", "--genus", "0..2"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--genus", "0..2", "--stamp"]);
    assert!(json(&c)["generated_at_unix"].is_u64());
}

#[test]
fn verify_genus_one_johns() {
    let out = run(&["verify", "--genus", "1", "--construction", "johns"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let cert = &report["certificates"][0];
    assert_eq!(cert["boundary_H1"], serde_json::json!({"rank": 3, "torsion": []}));
    assert!(cert["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_full_suite() {
    let out = run(&["verify", "--genus", "0..8", "--construction", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["certificates"].as_array().unwrap().len(), 18);
    assert_eq!(report["all_pass"], true);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--genus", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--genus", "5..2"]).status.code(), Some(2));
    assert_eq!(run(&["generate", "johns", "--genus", "0..40"]).status.code(), Some(2));
    assert_eq!(
        run(&[
            "generate",
            "johns",
            "--genus",
            "0..1",
            "--format",
            "dot",
            "--out",
            "/dev/null/x/"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(run(&["generate", "johns"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tampered_fibration_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = json(&run(&["generate", "johns", "--genus", "1"]));
    doc["genus"] = Value::from(2);
    let path = dir.path().join("bad.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = run(&["verify", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fiber_boundary"));
}

#[test]
fn compare_genus_one() {
    let out = run(&["compare", "--genus", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"][0];
    assert_eq!(r["found"], true);
    assert_eq!(r["cycle_map"][0], serde_json::json!(["a1", "alpha1"]));
    assert_eq!(r["cycle_map"][1], serde_json::json!(["a2", "alpha2"]));
}

#[test]
fn compare_range_and_negative_control() {
    let all = json(&run(&["compare", "--genus", "0..8"]));
    let found: Vec<bool> = all["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["found"] == true)
        .collect();
    assert_eq!(found, vec![true; 9]);
    let out = run(&["compare", "--genus", "2", "--against", "johns:1"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &json(&out)["results"][0];
    assert_eq!(r["found"], false);
    assert!(r["reason"].as_str().unwrap().starts_with("fiber_invariants"));
}

#[test]
fn export_divides_and_fibers() {
    let dir = tempfile::tempdir().unwrap();
    let text = run(&["export", "divide", "--genus", "1", "--format", "text"]);
    assert_eq!(text.status.code(), Some(0));
    let path = dir.path().join("std1.txt");
    std::fs::write(&path, &text.stdout).unwrap();
    let back = json(&run(&["export", "divide", "--input", path.to_str().unwrap()]));
    assert_eq!(back["divide"]["ambient_genus"], 1);
    assert_eq!(back["admissibility"]["admissible"], true);

    let fiber = json(&run(&["export", "fiber", "--divide", path.to_str().unwrap()]));
    assert_eq!(fiber["schema"], "lf-forge/ribbon-graph/v1");
    assert_eq!(fiber["curves"].as_array().unwrap().len(), 4);

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "genus 1\n0: 0 2 1 3\n").unwrap();
    let out = run(&["export", "fiber", "--divide", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "non-admissible divide is a check failure");

    let dot = run(&[
        "export",
        "fiber",
        "--construction",
        "johns",
        "--genus",
        "0",
        "--format",
        "dot",
    ]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("graph "));
}
