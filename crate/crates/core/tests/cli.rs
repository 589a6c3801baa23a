use std::process::Command;

use nilbound::cli::{run_with_args, EXIT_CONTRACT, EXIT_INCONCLUSIVE, EXIT_OK, EXIT_USAGE, SCHEMA_VERSION};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nilbound"))
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run_with_args(&full);
    assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn reduce_golden() {
    let out = run_with_args(&["reduce", "--n", "3", "yxyxx"]);
    assert_eq!(out.stdout, "word yxyxx\nexponents [0,1,2]\nnormal form +[0,1,2]\n");
    assert_eq!(out.code, EXIT_OK);
    let v = json(&["reduce", "--n", "2", "xy"]);
    assert_eq!(v["rendered"], "-[0,1]");
    assert_eq!(v["exponents"], serde_json::json!([1, 0]));
    assert_eq!(json(&["reduce", "--n", "2", "xx"])["rendered"], "0");
}

#[test]
fn reduce_modulo_prime() {
    let v = json(&["reduce", "--n", "3", "--p", "3", "xxyx"]);
    assert_eq!(v["normal_form"], serde_json::json!([["[1,2]", "2"]]));
}

#[test]
fn member_examples() {
    assert_eq!(json(&["member", "--n", "2", "--m", "2", "--p", "2", "x1 x2 x1"])["member"], true);
    assert_eq!(json(&["member", "--n", "2", "--m", "2", "--p", "2", "x1 x2"])["member"], false);
    assert_eq!(json(&["member", "--n", "3", "--m", "2", "--p", "3", "x2 x1 x2 x1 x1"])["verdict"], "non-member");
}

#[test]
fn member_rejects_extra_letters() {
    let out = run_with_args(&["member", "--n", "2", "--m", "2", "x1 x3"]);
    assert_eq!(out.code, EXIT_USAGE);
}

#[test]
fn dnm_and_beta_reports() {
    let v = json(&["dnm", "--n", "2", "--m", "2", "--p", "2"]);
    assert_eq!(v["schema_version"], SCHEMA_VERSION);
    assert_eq!(v["command"], "dnm");
    assert_eq!(v["d"], 3);
    assert_eq!(v["status"], "resolved");
    let rows = v["degrees"].as_array().unwrap();
    assert_eq!(rows[0]["D"], 2);
    assert_eq!(rows[0]["words"], 4);

    let b = json(&["beta", "--n", "2", "--m", "1", "--p", "2"]);
    assert_eq!(b["beta_estimate"], 2);
    assert_eq!(b["exact"], true);
}

#[test]
fn dnm_cap_exhaustion_is_inconclusive() {
    let out = run_with_args(&["dnm", "--n", "3", "--m", "2", "--p", "3", "--cap", "5"]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    assert!(out.stdout.contains("inconclusive"));
}

#[test]
fn beta_below_stability_is_inconclusive() {
    let out = run_with_args(&["beta", "--n", "2", "--m", "2", "--cap", "2"]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
}

#[test]
fn crosscheck_passes_small_cases() {
    let v = json(&["crosscheck", "--n", "2", "--m", "1", "--p", "2"]);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["d"], 2);
}

#[test]
fn chi_all_zero() {
    let out = run_with_args(&["chi", "--n", "2", "--m", "2", "--degree", "3", "--samples", "20"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("all-zero: 40 of 40 cases"));
}

#[test]
fn express_outcomes() {
    let v = json(&["express", "--n", "2", "--m", "2", "--p", "2", "x1 x2 x1"]);
    assert_eq!(v["outcome"]["status"], "expressed");
    assert!(!v["outcome"]["terms"].as_array().unwrap().is_empty());
    let v = json(&["express", "--n", "2", "--m", "2", "--p", "2", "x1 x2"]);
    assert_eq!(v["outcome"]["status"], "no_expression");
}

#[test]
fn certify_n4() {
    let v = json(&["certify", "--n", "4"]);
    assert_eq!(v["bound"], "d >= 10");
    assert_eq!(v["normal_form"], serde_json::json!([["[0,1,2,3]", "1"]]));
    assert_eq!(v["word"], "yxyxxyxxx");
    assert_eq!(v["degree"], 9);
}

#[test]
fn lemmas_pass() {
    let out = run_with_args(&["lemmas", "--samples", "100"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert_eq!(out.stdout.lines().filter(|l| l.starts_with("pass ")).count(), 7);
}

#[test]
fn exit_codes_are_distinct() {
    let codes = [EXIT_OK, EXIT_CONTRACT, EXIT_USAGE, EXIT_INCONCLUSIVE];
    for (i, a) in codes.iter().enumerate() {
        for b in &codes[i + 1..] {
            assert_ne!(a, b);
        }
    }
    assert_eq!(run_with_args(&["dnm", "--n", "2", "--p", "6"]).code, EXIT_USAGE);
    assert_eq!(run_with_args(&["member", "--n", "2", "--budget", "1", "x1 x2 x1 x2"]).code, EXIT_INCONCLUSIVE);
}

#[test]
fn errors_are_reported_in_json() {
    let out = run_with_args(&["member", "--n", "2", "--budget", "1", "x1 x2 x1 x2", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], "inconclusive");
    assert_eq!(v["schema_version"], SCHEMA_VERSION);
}

#[test]
fn json_is_deterministic() {
    for args in [
        vec!["dnm", "--n", "2", "--m", "3", "--format", "json"],
        vec!["chi", "--n", "2", "--samples", "5", "--seed", "9", "--format", "json"],
        vec!["certify", "--n", "5", "--seed", "3", "--format", "json"],
        vec!["express", "--n", "2", "x1 x2 x2 x1", "--format", "json"],
    ] {
        assert_eq!(run_with_args(&args), run_with_args(&args));
    }
}

#[test]
fn binary_exit_codes_and_thread_cap() {
    let ok = bin().args(["reduce", "--n", "2", "xy"]).env("NILBOUND_THREADS", "2").output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "word xy\nexponents [1,0]\nnormal form -[0,1]\n");

    let bad = bin().args(["reduce", "--n", "2", "xy"]).env("NILBOUND_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));

    let usage = bin().args(["reduce"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(EXIT_USAGE));

    let one = bin()
        .args(["dnm", "--n", "2", "--m", "3", "--format", "json"])
        .env("NILBOUND_THREADS", "1")
        .output()
        .unwrap();
    let many = bin()
        .args(["dnm", "--n", "2", "--m", "3", "--format", "json"])
        .env("NILBOUND_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
}
