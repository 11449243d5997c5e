//! End-to-end checks of the command-line interface: exit codes, output
//! formats, determinism of emitted files, and JSON round-tripping.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symspace"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn expected_tvd_prints_the_exact_value() {
    let out = run_ok(&["expected-tvd", "--ensemble", "aii", "--dim", "4"]);
    assert_eq!(out.trim(), "0.421875");
    let out = run_ok(&["expected-tvd", "--ensemble", "unitary", "--dim", "4"]);
    assert_eq!(out.trim(), "0.31640625");
}

#[test]
fn validation_failures_exit_one() {
    // d = 3 violates the dimension floor.
    let st = bin()
        .args(["expected-tvd", "--ensemble", "unitary", "--dim", "3"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    // Odd dimension for aii.
    let st = bin()
        .args(["expected-tvd", "--ensemble", "aii", "--dim", "7"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    // No closed forms for the split families.
    let st = bin()
        .args(["expected-tvd", "--ensemble", "aiii", "--dim", "8"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    // Unknown flag.
    let st = bin()
        .args(["expected-tvd", "--no-such-flag"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
    // Symplectic sampling is unsupported by design.
    let st = bin()
        .args(["sample", "--ensemble", "symplectic", "--dim", "4"])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(1));
}

#[test]
fn law_check_partner_passes_and_exits_zero() {
    let st = bin()
        .args([
            "law-check",
            "--ensemble",
            "aii",
            "--entry",
            "partner",
            "--dim",
            "8",
            "--trials",
            "1000",
        ])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(0));
}

#[test]
fn check_failures_exit_two() {
    // A zero tolerance forces the twirl check to fail.
    let st = bin()
        .args([
            "twirl-check",
            "--ensemble",
            "ai",
            "--dim",
            "4",
            "--trials",
            "1000",
            "--tol",
            "0.0",
        ])
        .status()
        .unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn sample_emits_row_major_re_im_pairs() {
    let out = run_ok(&[
        "sample",
        "--ensemble",
        "unitary",
        "--dim",
        "4",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let samples = v["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 1);
    let rows = samples[0].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let row = row.as_array().unwrap();
        assert_eq!(row.len(), 4);
        for pair in row {
            let pair = pair.as_array().unwrap();
            assert_eq!(pair.len(), 2);
            assert!(pair[0].is_number() && pair[1].is_number());
        }
    }
    // Orthogonal samples carry exactly-zero imaginary parts.
    let out = run_ok(&[
        "sample",
        "--ensemble",
        "orthogonal",
        "--dim",
        "4",
        "--seed",
        "9",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v["samples"][0].as_array().unwrap() {
        for pair in row.as_array().unwrap() {
            assert_eq!(pair[1].as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn seed_env_var_is_honored() {
    let with_flag = run_ok(&[
        "mc-tvd",
        "--ensemble",
        "unitary",
        "--dim",
        "8",
        "--trials",
        "500",
        "--seed",
        "123",
        "--format",
        "json",
    ]);
    let out = bin()
        .args([
            "mc-tvd",
            "--ensemble",
            "unitary",
            "--dim",
            "8",
            "--trials",
            "500",
            "--format",
            "json",
        ])
        .env("SYMSPACE_SEED", "123")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(with_flag, String::from_utf8(out.stdout).unwrap());
}

#[test]
fn json_reports_reparse_into_their_record_types() {
    let out = run_ok(&[
        "mc-tvd",
        "--ensemble",
        "diii",
        "--dim",
        "8",
        "--trials",
        "500",
        "--seed",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let report = symspace::verify::McReport {
        estimate: v["estimate"].as_f64().unwrap(),
        stderr: v["stderr"].as_f64().unwrap(),
        trials: v["meta"]["trials"].as_u64().unwrap(),
        master_seed: v["meta"]["seed"].as_u64().unwrap(),
        wall_time_s: v["meta"]["wall_time_s"].as_f64().unwrap(),
    };
    let round: symspace::verify::McReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(round, report);

    let out = run_ok(&[
        "regime-table",
        "--ensemble",
        "aii",
        "--n-list",
        "24,32",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v["rows"].as_array().unwrap() {
        let parsed: symspace::sqbound::RegimeRow = serde_json::from_value(row.clone()).unwrap();
        assert_eq!(parsed.n as u64, row["n"].as_u64().unwrap());
    }
}

#[test]
fn csv_and_json_values_match_to_full_precision() {
    let json_out = run_ok(&[
        "mc-tvd",
        "--ensemble",
        "ai",
        "--dim",
        "8",
        "--trials",
        "500",
        "--seed",
        "31",
        "--format",
        "json",
    ]);
    let csv_out = run_ok(&[
        "mc-tvd",
        "--ensemble",
        "ai",
        "--dim",
        "8",
        "--trials",
        "500",
        "--seed",
        "31",
        "--format",
        "csv",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let mut lines = csv_out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    for (key, cell) in header.iter().zip(&row) {
        if let Some(expected) = v.get(key) {
            if expected.is_number() {
                assert_eq!(
                    &expected.to_string(),
                    cell,
                    "field {key} differs between formats"
                );
            }
        }
    }
}

#[test]
fn same_argv_means_identical_bytes() {
    let args = [
        "concentration",
        "--ensemble",
        "ai",
        "--dim",
        "8",
        "--trials",
        "1000",
        "--seed",
        "77",
        "--format",
        "json",
    ];
    let first = run_ok(&args);
    let second = run_ok(&args);
    assert_eq!(first, second);
}

#[test]
fn regime_table_fragility_is_visible_from_the_cli() {
    let out = run_ok(&[
        "regime-table",
        "--ensemble",
        "aii",
        "--n-list",
        "24,32,40",
        "--tau-power",
        "0.5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["status"], "vacuous");
    }
}
