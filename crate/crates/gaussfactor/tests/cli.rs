//! End-to-end checks of the installed binary: exit codes, byte stability,
//! file output and the documented CSV shapes.

use std::process::{Command, Output};

fn gaussfactor(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gaussfactor"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = gaussfactor(args, &[]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn factor_pattern_matches_documented_rows() {
    let out = stdout_of(&["factor", "--n", "157573", "--m", "10", "--variant", "A"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 398);
    assert_eq!(lines[0], "ell,re,im,magnitude,is_factor");
    assert_eq!(lines[17], "17,1.000000000000,0.000000000000,1.000000000000,true");
}

#[test]
fn simulate_rows_and_json_mirror() {
    let csv = stdout_of(&["simulate", "--n", "157573", "--ell", "18", "--m", "10"]);
    assert_eq!(csv.lines().nth(4).unwrap(), "3,-1.000000000000");

    let json = stdout_of(&[
        "simulate", "--n", "157573", "--ell", "18", "--m", "10", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["s_m"].as_array().unwrap().len(), 11);
    assert!((v["s_m"][3].as_f64().unwrap() + 1.0).abs() < 1e-11);
}

#[test]
fn neighborhood_finds_planted_factor() {
    let out = stdout_of(&[
        "neighborhood", "--n", "1062885837863046188098307", "--center", "790645490053",
        "--halfwidth", "10", "--m", "200",
    ]);
    assert_eq!(out.lines().count(), 22);
    let center = out.lines().nth(11).unwrap();
    assert!(center.starts_with("790645490053,"));
    assert!(center.ends_with(",1.000000000000,true"));
}

#[test]
fn verify_suites_emit_passing_json() {
    for suite in ["equivalence", "refocusing", "telescoping", "damping"] {
        let out = gaussfactor(&["verify", suite], &[]);
        assert!(out.status.success(), "suite {suite}");
        let v: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
        assert_eq!(v["suite"], suite);
        assert_eq!(v["passed"], serde_json::Value::Bool(true));
        assert!(!v["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    // validation error
    assert_eq!(gaussfactor(&["factor", "--n", "abc", "--m", "10"], &[]).status.code(), Some(2));
    assert_eq!(gaussfactor(&["verify", "bogus"], &[]).status.code(), Some(2));
    // refused full scan for a 30-digit target
    let refused = gaussfactor(
        &["factor", "--n", "100000000000000000000000000003", "--m", "10"],
        &[],
    );
    assert_eq!(refused.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("--force"));
    // bad thread cap
    let bad_env = gaussfactor(
        &["factor", "--n", "157573", "--m", "2"],
        &[("GAUSSFACTOR_THREADS", "zero")],
    );
    assert_eq!(bad_env.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_caps() {
    let args = ["factor", "--n", "157573", "--m", "10"];
    let first = gaussfactor(&args, &[]);
    let second = gaussfactor(&args, &[]);
    assert_eq!(first.stdout, second.stdout);
    let one = gaussfactor(&args, &[("GAUSSFACTOR_THREADS", "1")]);
    let four = gaussfactor(&args, &[("GAUSSFACTOR_THREADS", "4")]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(first.stdout, one.stdout);
}

#[test]
fn out_flag_writes_the_same_bytes_to_disk() {
    let dir = std::env::temp_dir().join(format!("gaussfactor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pattern.csv");
    let args = ["factor", "--n", "15", "--m", "5"];
    let stdout = stdout_of(&args);
    let with_out = gaussfactor(
        &["factor", "--n", "15", "--m", "5", "--out", path.to_str().unwrap()],
        &[],
    );
    assert!(with_out.status.success());
    assert!(with_out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn factor_report_json() {
    let out = stdout_of(&["factor", "--n", "157573", "--m", "10", "--report"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["detected"], serde_json::json!([13, 17, 23, 31, 221, 299, 391]));
    assert_eq!(v["missed"].as_array().unwrap().len(), 0);
    assert_eq!(v["false_positives"].as_array().unwrap().len(), 0);
    assert_eq!(v["scan_size"], 397);
    assert!(v["contrast_v"].as_f64().unwrap() > 0.5);
    assert!((v["resource_estimate_sqrt_n"].as_f64().unwrap() - 396.9546).abs() < 1e-3);
}

#[test]
fn contrast_csv_shape() {
    let out = stdout_of(&["contrast", "--n", "157573", "--m-list", "2,10"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m,v");
    assert_eq!(lines.len(), 3);
    let v2: f64 = lines[1].strip_prefix("2,").unwrap().parse().unwrap();
    let v10: f64 = lines[2].strip_prefix("10,").unwrap().parse().unwrap();
    assert!(v10 > v2);
}
