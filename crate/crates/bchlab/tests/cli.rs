//! End-to-end tests of the `bchlab` binary: exit codes, stdout verdicts,
//! usage errors, JSON/CSV artifacts, and output determinism.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bchlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bchlab"))
        .args(args)
        .output()
        .expect("the binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no exit code (killed by signal?)")
}

/// Per-process temp path so parallel test runs do not collide.
fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("bchlab-cli-{}-{}", std::process::id(), name))
}

#[test]
fn help_and_version_exit_zero() {
    let help = bchlab(&["--help"]);
    assert_eq!(code(&help), 0, "--help must exit 0");
    assert!(stdout(&help).contains("Usage"), "help text goes to stdout");

    let version = bchlab(&["--version"]);
    assert_eq!(code(&version), 0, "--version must exit 0");
    assert!(stdout(&version).contains("bchlab"));
}

#[test]
fn missing_required_flag_is_usage_error() {
    let out = bchlab(&["bch", "--m", "3", "--delta", "4"]);
    assert_eq!(code(&out), 1, "missing --q must exit 1");
    assert!(
        stderr(&out).contains("--q is required"),
        "stderr should name the missing flag: {}",
        stderr(&out)
    );
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = bchlab(&["frobnicate"]);
    assert_eq!(code(&out), 1);
    assert!(!stderr(&out).is_empty());
}

#[test]
fn unknown_family_is_usage_error() {
    let out = bchlab(&["weights", "--family", "W9", "--q", "3", "--m", "3"]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("unknown family"),
        "stderr should list the known families: {}",
        stderr(&out)
    );
}

#[test]
fn csv_is_rejected_outside_weights() {
    let path = tmp("reject.csv");
    let out = bchlab(&[
        "cosets",
        "--q",
        "3",
        "--m",
        "3",
        "--csv",
        path.to_str().unwrap(),
    ]);
    let _ = fs::remove_file(&path);
    assert_eq!(code(&out), 1, "--csv outside weights must be a usage error");
    assert!(stderr(&out).contains("--csv"));
}

#[test]
fn weights_verify_reports_match() {
    let out = bchlab(&[
        "weights", "--family", "C-delta1", "--q", "3", "--m", "3", "--verify",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("weights C-delta1: q=3 m=3 -> [13, 4]"),
        "{text}"
    );
    assert!(
        text.contains("[closed form vs trace enumeration] distribution: MATCH"),
        "{text}"
    );
}

#[test]
fn weights_json_is_deterministic_and_typed() {
    let path1 = tmp("weights1.json");
    let path2 = tmp("weights2.json");
    let args = |p: &PathBuf| {
        vec![
            "weights".to_string(),
            "--family".into(),
            "C-delta1".into(),
            "--q".into(),
            "3".into(),
            "--m".into(),
            "3".into(),
            "--verify".into(),
            "--json".into(),
            p.to_str().unwrap().into(),
        ]
    };
    let run1 = Command::new(env!("CARGO_BIN_EXE_bchlab"))
        .args(args(&path1))
        .output()
        .unwrap();
    let run2 = Command::new(env!("CARGO_BIN_EXE_bchlab"))
        .args(args(&path2))
        .output()
        .unwrap();
    assert_eq!(run1.status.code(), Some(0), "stderr: {}", stderr(&run1));
    assert_eq!(run2.status.code(), Some(0));

    let bytes1 = fs::read(&path1).unwrap();
    let bytes2 = fs::read(&path2).unwrap();
    let _ = fs::remove_file(&path1);
    let _ = fs::remove_file(&path2);
    assert_eq!(bytes1, bytes2, "reruns must produce byte-identical JSON");

    let v: serde_json::Value = serde_json::from_slice(&bytes1).unwrap();
    assert_eq!(v["ok"], serde_json::json!(true));
    assert_eq!(v["family"], serde_json::json!("C-delta1"));
    assert_eq!(v["length"], serde_json::json!(13));
    assert_eq!(v["k"], serde_json::json!(4));
    // Frequencies are decimal strings so arbitrary-precision counts survive.
    let entries = v["closed_form"]["entries"].as_array().unwrap();
    assert!(entries.iter().all(|e| e[0].is_u64() && e[1].is_string()));
    assert_eq!(v["closed_form"]["source"], serde_json::json!("closed_form"));
    assert_eq!(v["enumeration"]["source"], serde_json::json!("enumeration"));
    // The manifest pins the field representation behind the enumeration.
    assert!(v["manifest"]["field"]["prim_poly_qm"].is_array());
    // Every verdict carries its evidence source.
    for verdict in v["verdicts"].as_array().unwrap() {
        assert!(verdict["source"].is_string());
        assert!(!verdict["source"].as_str().unwrap().is_empty());
    }
    // Timing never leaks into the artifact (it would break determinism).
    assert!(!String::from_utf8_lossy(&bytes1).contains("elapsed"));
    assert!(
        stderr(&run1).contains("elapsed:"),
        "timing belongs on stderr"
    );
    assert!(!stdout(&run1).contains("elapsed:"));
}

#[test]
fn weights_csv_mirrors_the_table() {
    let path = tmp("weights.csv");
    let out = bchlab(&[
        "weights",
        "--family",
        "C-delta1",
        "--q",
        "3",
        "--m",
        "3",
        "--verify",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = fs::read_to_string(&path).unwrap();
    let _ = fs::remove_file(&path);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,q,m,length,k,source,weight,frequency");
    assert!(
        lines.contains(&"C-delta1,3,3,13,4,closed_form,7,26"),
        "closed-form rows present: {text}"
    );
    assert!(
        lines.contains(&"C-delta1,3,3,13,4,enumeration,7,26"),
        "enumeration rows present: {text}"
    );
}

#[test]
fn cosets_largest_two_verdicts_agree() {
    let out = bchlab(&[
        "cosets",
        "--q",
        "3",
        "--m",
        "3",
        "--lambda",
        "2",
        "--largest",
        "2",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("cosets: q=3 m=3 lambda=2 n=13"), "{text}");
    assert!(
        text.contains("largest leader #1: expected 7, got 7 — OK"),
        "{text}"
    );
    assert!(
        text.contains("largest leader #2: expected 4, got 4 — OK"),
        "{text}"
    );
    assert!(text.contains("verdict: 4/4 OK"), "{text}");
}

#[test]
fn cosets_smallest_nonleader_even_m() {
    let out = bchlab(&[
        "cosets",
        "--q",
        "3",
        "--m",
        "4",
        "--lambda",
        "2",
        "--smallest-nonleader",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("smallest non-leader (coprime-to-q digits): 14"),
        "{text}"
    );
    assert!(text.contains("verdict: 1/1 OK"), "{text}");
}

#[test]
fn bch_construction_matches_the_worked_example() {
    let out = bchlab(&[
        "bch", "--q", "3", "--m", "3", "--lambda", "2", "--delta", "4",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("n=13 k=7"), "{text}");
    assert!(
        text.contains("generator times parity-check equals x^n - 1"),
        "{text}"
    );
    assert!(text.contains("verdict: 1/1 OK"), "{text}");
}

#[test]
fn bch_closed_dimension_even_m() {
    let out = bchlab(&[
        "bch",
        "--q",
        "3",
        "--m",
        "4",
        "--lambda",
        "2",
        "--delta",
        "10",
        "--dim-closed",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("n=40 k=18"), "{text}");
    assert!(text.contains("closed-form dimension: 18"), "{text}");
    assert!(text.contains("verdict: 2/2 OK"), "{text}");
}

#[test]
fn bch_min_distance_is_measured() {
    let out = bchlab(&[
        "bch",
        "--q",
        "3",
        "--m",
        "3",
        "--lambda",
        "2",
        "--delta",
        "7",
        "--min-distance",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("minimum distance (exhaustive): 7"), "{text}");
    assert!(text.contains("verdict: 3/3 OK"), "{text}");
}

#[test]
fn char_sum_distribution_table_runs() {
    let out = bchlab(&["weights", "--family", "T-dist", "--q", "3", "--m", "3"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("character-sum value distribution: q=3 m=3"),
        "{text}"
    );
    assert!(text.contains("verdict: 6/6 OK"), "{text}");
}

#[test]
fn repro_all_skips_over_budget_claims() {
    let out = bchlab(&["repro-all", "--max-field", "3^4"]);
    assert_eq!(
        code(&out),
        0,
        "a skip is not a failure; stderr: {}",
        stderr(&out)
    );
    let text = stdout(&out);
    assert!(text.contains("[PASS"), "{text}");
    assert!(text.contains("[SKIP"), "{text}");
    assert!(!text.contains("[FAIL"), "{text}");
    assert!(
        text.contains("> --max-field 81"),
        "skips name the budget: {text}"
    );
    assert!(text.contains("summary:"), "{text}");
    assert!(text.contains("0 fail"), "{text}");
}

#[test]
fn threads_env_overrides_flag() {
    let ok = Command::new(env!("CARGO_BIN_EXE_bchlab"))
        .args([
            "weights", "--family", "C-delta1", "--q", "3", "--m", "3", "--table",
        ])
        .env("BCHLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0), "stderr: {}", stderr(&ok));

    let bad = Command::new(env!("CARGO_BIN_EXE_bchlab"))
        .args([
            "weights", "--family", "C-delta1", "--q", "3", "--m", "3", "--table",
        ])
        .env("BCHLAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1), "zero threads is a usage error");
}
