use std::process::Command;

use pairquat_cli::cli::{run, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_OK};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("pairquat").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

const I: &str = r#"{"s":0,"v":[1,0,0]}"#;
const J: &str = r#"{"s":0,"v":[0,1,0]}"#;

#[test]
fn mul_golden() {
    assert_eq!(run_args(&["mul", "--a", I, "--b", J]), (EXIT_OK, "{\"s\":0,\"v\":[0,0,1]}\n".into(), String::new()));
}

#[test]
fn align_golden() {
    let (code, out, _) = run_args(&["align", "--ui", "[1,0,0]", "--uf", "[0,1,0]", "--dim", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{\"matrix\":[[0,-1,0],[1,0,0],[0,0,1]]}\n");
}

#[test]
fn align_two_dimensions() {
    let (code, out, _) = run_args(&["align", "--ui", "[1,0]", "--uf", "[0,1]"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{\"matrix\":[[0,-1],[1,0]]}\n");
}

#[test]
fn slerp_golden() {
    let (code, out, _) = run_args(&["slerp", "--a", I, "--b", J, "--t", "0.5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "{\"s\":0,\"v\":[0.7071067811865475,0.7071067811865475,0]}\n");
    let (_, s2, _) = run_args(&["slerp", "--a", I, "--b", J, "--t", "0.5", "--method", "s2"]);
    assert_eq!(s2, out);
}

#[test]
fn slerp_path_has_n_plus_one_samples() {
    let (code, out, _) = run_args(&["slerp", "--a", I, "--b", J, "--samples", "4"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let samples = v.as_array().unwrap();
    assert_eq!(samples.len(), 5);
    assert_eq!(samples[0]["q"], serde_json::json!({"s": 0, "v": [1, 0, 0]}));
    assert_eq!(samples[4]["t"], serde_json::json!(1));
}

#[test]
fn merge_hamilton_pairs() {
    let (code, out, _) = run_args(&["merge", "--left", r#"{"first":[0,1,0],"second":[0,0,1]}"#, "--right", r#"{"first":[0,1,0],"second":[0,0,1]}"#]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["quaternion"], serde_json::json!({"s": -1, "v": [0, 0, 0]}));
}

#[test]
fn validation_errors_exit_one() {
    let (code, out, err) = run_args(&["align", "--ui", "[1,0,0]", "--uf", "[-1,0,0]"]);
    assert_eq!((code, out.as_str()), (EXIT_INVALID, ""));
    assert!(err.contains("\"error\":\"AntipodalInputs\""));

    let (code, _, err) = run_args(&["align", "--ui", "[2,0,0]", "--uf", "[0,1,0]"]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("NonUnitVector"));

    let (code, _, err) = run_args(&["mul", "--a", "{\"s\":0,\"v\":[1,0,0]", "--b", J]);
    assert_eq!(code, EXIT_INVALID);
    assert!(err.contains("MalformedJson"));

    let (code, _, _) = run_args(&["slerp", "--a", I, "--b", J, "--t", "0.5", "--samples", "3"]);
    assert_eq!(code, EXIT_INVALID);

    let (code, _, _) = run_args(&["belt", "--ns", "0"]);
    assert_eq!(code, EXIT_INVALID);
}

#[test]
fn belt_csv_and_json() {
    let (code, csv, _) = run_args(&["belt", "--ns", "4", "--nt", "2"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1 + 5 * 3);
    assert_eq!(lines[0], pairquat::belt::CSV_HEADER);
    assert!(lines[1].starts_with("0,0,-1,0,0,"));
    assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 18));

    let (code, json, _) = run_args(&["belt", "--ns", "4", "--nt", "2", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let frames: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    assert_eq!(frames.len(), 15);
    for f in &frames[10..] {
        let e: Vec<f64> = serde_json::from_value(f["e"].clone()).unwrap();
        assert!((e[0] - 1.0).abs() + e[1].abs() + e[2].abs() < 1e-15);
    }
}

#[test]
fn check_is_deterministic_and_passes() {
    let (code, out, _) = run_args(&["check", "--iters", "300", "--seed", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(!out.contains("FAIL"));
    assert_eq!(run_args(&["check", "--iters", "300", "--seed", "7"]).1, out);
    assert_ne!(EXIT_CHECK_FAILED, EXIT_INVALID);
}

#[test]
fn bench_lists_all_kernels() {
    let (code, out, _) = run_args(&["bench", "--seed", "3", "--iters", "50"]);
    assert_eq!(code, EXIT_OK);
    let reports: Vec<serde_json::Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(reports.len(), 6);
    assert_eq!(reports[0]["kernel"], "align_matrix3_specialized");
    assert!(reports[0]["multiplications"].as_u64().unwrap() <= 18);
    assert_eq!(reports[0]["divisions"], 1);
    let again: Vec<serde_json::Value> = run_args(&["bench", "--seed", "3", "--iters", "7"]).1.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    for (a, b) in reports.iter().zip(&again) {
        assert_eq!(a["checksum"], b["checksum"]);
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pairquat");
    let ok = Command::new(bin).args(["mul", "--a", I, "--b", J]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(ok.stdout, b"{\"s\":0,\"v\":[0,0,1]}\n");
    let usage = Command::new(bin).arg("nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    assert!(!usage.stderr.is_empty());
    let check = Command::new(bin).args(["check", "--seed", "7"]).output().unwrap();
    assert_eq!(check.status.code(), Some(0));
}
