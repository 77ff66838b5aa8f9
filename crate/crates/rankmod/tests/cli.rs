//! End-to-end tests for the `rankmod` binary: golden outputs, stream
//! round-trips, exit codes, and report determinism.

use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

// --- harness ---

struct Run {
    status: i32,
    stdout: String,
    stderr: String,
}

fn rankmod(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rankmod"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn rankmod");
    // A child that rejects its arguments may exit before reading stdin;
    // the resulting broken pipe is not this harness's failure.
    if let Err(err) = child
        .stdin
        .take()
        .expect("stdin handle")
        .write_all(stdin.as_bytes())
    {
        assert_eq!(err.kind(), std::io::ErrorKind::BrokenPipe, "{err}");
    }
    let out = child.wait_with_output().expect("wait for rankmod");
    Run {
        status: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn config_file(text: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().expect("temp config");
    file.write_all(text.as_bytes()).expect("write config");
    file
}

const GF8: &[&str] = &["--construction", "I", "--q", "8", "--t", "1"];

const PRODUCT_SEED_CONFIG: &str = r#"{"construction": "IIIB", "q": 16, "l": 8,
    "seed": {"family": "product",
             "row": {"family": "grs", "p": 2, "m": 4, "n": 15, "k": 9},
             "col": {"family": "grs", "p": 2, "m": 4, "n": 14, "k": 3}}}"#;

// --- encode / decode streams ---

#[test]
fn encode_index_zero_is_the_identity() {
    let run = rankmod(&[&["encode"], GF8].concat(), "0\n");
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "{\"n\":7,\"perm\":[1,2,3,4,5,6,7]}\n");
}

#[test]
fn encode_zero_symbols_give_the_identity() {
    // The Gray construction at n = 62 carries 213 bits per codeword;
    // the all-zero message maps to the identity permutation.
    let zeros = format!("[{}]\n", vec!["0"; 213].join(","));
    let run = rankmod(
        &["encode", "--construction", "II", "--n", "62", "--t", "5"],
        &zeros,
    );
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    let line: Value = serde_json::from_str(run.stdout.trim()).unwrap();
    assert_eq!(line["n"], 62);
    let perm: Vec<u64> = line["perm"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .collect();
    assert_eq!(perm, (1..=62).collect::<Vec<u64>>());
}

#[test]
fn encode_then_decode_round_trips_through_one_swap() {
    let indices = "0\n5\n42\n167\n";
    let encoded = rankmod(&[&["encode"], GF8].concat(), indices);
    assert_eq!(encoded.status, 0, "stderr: {}", encoded.stderr);

    // Swap one adjacent pair in each codeword: distance 1, inside the
    // single-error radius, so decoding must return the original index.
    let mut corrupted = String::new();
    for line in encoded.stdout.lines() {
        let parsed: Value = serde_json::from_str(line).unwrap();
        let mut perm: Vec<u64> = parsed["perm"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        perm.swap(2, 3);
        corrupted.push_str(&format!(
            "{{\"n\":7,\"perm\":{}}}\n",
            serde_json::to_string(&perm).unwrap()
        ));
    }

    let decoded = rankmod(&[&["decode"], GF8].concat(), &corrupted);
    assert_eq!(decoded.status, 0, "stderr: {}", decoded.stderr);
    assert_eq!(decoded.stdout, indices);
}

#[test]
fn decode_accepts_inversion_vectors() {
    // The identity permutation has the all-zero inversion vector.
    let run = rankmod(
        &[&["decode"], GF8].concat(),
        "{\"n\":7,\"invvec\":[0,0,0,0,0,0]}\n",
    );
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "0\n");
}

#[test]
fn decode_far_from_the_code_prints_null() {
    let reversed: Vec<u32> = (1..=62).rev().collect();
    let line = format!(
        "{{\"n\":62,\"perm\":{}}}\n",
        serde_json::to_string(&reversed).unwrap()
    );
    let run = rankmod(
        &["decode", "--construction", "II", "--n", "62", "--t", "5"],
        &line,
    );
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "null\n");
}

#[test]
fn flags_override_the_config_file() {
    let file = config_file(r#"{"construction": "I", "p": 2, "m": 3, "t": 1}"#);
    let path = file.path().to_str().unwrap();
    let run = rankmod(
        &["encode", "--config", path, "--q", "16", "--t", "2"],
        "0\n",
    );
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    let parsed: Value = serde_json::from_str(run.stdout.trim()).unwrap();
    assert_eq!(parsed["n"], 15, "overrides should rebuild over GF(16)");
}

#[test]
fn out_flag_writes_the_file_instead_of_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("words.jsonl");
    let run = rankmod(
        &[&["encode"], GF8, &["--out", path.to_str().unwrap()]].concat(),
        "0\n",
    );
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "");
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "{\"n\":7,\"perm\":[1,2,3,4,5,6,7]}\n");
}

// --- simulate ---

#[test]
fn simulate_is_deterministic_for_a_seed() {
    let args = [
        &["simulate"],
        GF8,
        &["--trials", "200", "--errors", "3", "--seed", "7"],
    ]
    .concat();
    let first = rankmod(&args, "");
    let second = rankmod(&args, "");
    assert_eq!(first.status, 0, "stderr: {}", first.stderr);
    assert_eq!(second.status, 0, "stderr: {}", second.stderr);

    let mut a: Value = serde_json::from_str(&first.stdout).unwrap();
    let mut b: Value = serde_json::from_str(&second.stdout).unwrap();
    // Wall time is the one field allowed to differ between runs.
    assert!(a["wall_time_s"].is_number());
    a.as_object_mut().unwrap().remove("wall_time_s");
    b.as_object_mut().unwrap().remove("wall_time_s");
    assert_eq!(a, b);

    assert_eq!(a["trials"], 200);
    assert_eq!(a["injected_errors"], 3);
    assert_eq!(a["seed"], 7);
    assert_eq!(a["generator"], "chacha12");
    let failures = a["failures"].as_u64().unwrap();
    let miscorrections = a["miscorrections"].as_u64().unwrap();
    assert!(failures + miscorrections <= 200);
}

#[test]
fn simulate_at_the_radius_never_fails() {
    let file = config_file(PRODUCT_SEED_CONFIG);
    let path = file.path().to_str().unwrap();
    let run = rankmod(
        &["simulate", "--config", path, "--trials", "10", "--seed", "3"],
        "",
    );
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    // --errors defaults to the decoder's promised radius.
    assert_eq!(report["injected_errors"], 23);
    assert_eq!(report["failures"], 0);
    assert_eq!(report["miscorrections"], 0);
}

// --- verify and table ---

#[test]
fn verify_reports_the_measured_distance() {
    let run = rankmod(&[&["verify"], GF8].concat(), "");
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(report["mode"], "exhaustive-distance");
    assert_eq!(report["codebook"], 168);
    assert_eq!(report["design_distance"], 3);
    assert_eq!(report["min_distance"], 4);
    assert_eq!(report["ok"], true);
}

#[test]
fn verify_can_recheck_every_distance_against_its_oracle() {
    let run = rankmod(
        &[&["verify"], GF8, &["--mode", "oracle-distance"]].concat(),
        "",
    );
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    let report: Value = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(report["mode"], "oracle-distance");
    assert_eq!(report["min_distance"], 4);
    assert_eq!(report["ok"], true);
}

#[test]
fn table_prints_the_reference_sweep_as_csv() {
    let run = rankmod(&["table"], "");
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    let lines: Vec<&str> = run.stdout.lines().collect();
    assert_eq!(lines[0], "n,log2_m,d,construction,seed");
    assert_eq!(lines[1], "63,30,31,I,");
    assert!(lines.contains(&"255,56,127,I,"));
    assert!(lines.iter().any(|l| l.starts_with("62,") && l.contains(",II,")));
    assert!(lines.iter().any(|l| l.starts_with("64,36,13,IIIA,")));
    assert!(lines.iter().any(|l| l.contains(",IIIB,")));
}

#[test]
fn table_runs_sweeps_from_a_spec_file() {
    let file = config_file(r#"[{"construction": "IIIA", "ext_degree": 6, "ts": [5, 6, 7]}]"#);
    let path = file.path().to_str().unwrap();
    let run = rankmod(&["table", "--config", path, "--format", "json"], "");
    assert_eq!(run.status, 0, "stderr: {}", run.stderr);
    let rows: Value = serde_json::from_str(&run.stdout).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["n"], 64);
    assert_eq!(rows[0]["log2_m"], 36.0);
    assert_eq!(rows[0]["d"], 13);
    assert_eq!(rows[0]["seed"], "bch[63,36,t=5]");
    assert_eq!(rows[2]["d"], 25);
}

// --- exit codes ---

#[test]
fn usage_errors_exit_one() {
    let bad_flag = rankmod(&["encode", "--bogus"], "");
    assert_eq!(bad_flag.status, 1);

    // A banded-quantizer seed lives in the config file; --t cannot
    // restate it, so mixing the two is a usage error.
    let file = config_file(PRODUCT_SEED_CONFIG);
    let path = file.path().to_str().unwrap();
    let conflicting = rankmod(&["encode", "--config", path, "--t", "3"], "0\n");
    assert_eq!(conflicting.status, 1);
    assert!(conflicting.stderr.contains("--t"), "stderr: {}", conflicting.stderr);

    let help = rankmod(&["--help"], "");
    assert_eq!(help.status, 0);
    assert!(help.stdout.contains("encode"));
}

#[test]
fn config_errors_exit_two() {
    let garbage = config_file("not json");
    let run = rankmod(
        &["encode", "--config", garbage.path().to_str().unwrap()],
        "0\n",
    );
    assert_eq!(run.status, 2);
    assert!(run.stderr.starts_with("rankmod: "), "stderr: {}", run.stderr);

    // The banded construction cannot be assembled from flags alone.
    let flags_only = rankmod(
        &["encode", "--construction", "IIIB", "--n", "62", "--t", "5"],
        "0\n",
    );
    assert_eq!(flags_only.status, 2);

    // Verification enumerates the codebook, so huge codes are refused.
    let over_cap = rankmod(
        &["verify", "--construction", "II", "--n", "62", "--t", "5"],
        "",
    );
    assert_eq!(over_cap.status, 2);
    assert!(over_cap.stderr.contains("codebook"), "stderr: {}", over_cap.stderr);
}

#[test]
fn data_errors_exit_three() {
    let bad_message = rankmod(&[&["decode"], GF8].concat(), "bogus\n");
    assert_eq!(bad_message.status, 3);
    assert!(bad_message.stderr.contains("line 1"), "stderr: {}", bad_message.stderr);

    // Header n disagrees with the codec length.
    let wrong_n = rankmod(
        &[&["decode"], GF8].concat(),
        "{\"n\":8,\"perm\":[1,2,3,4,5,6,7]}\n",
    );
    assert_eq!(wrong_n.status, 3);

    let not_a_perm = rankmod(
        &[&["decode"], GF8].concat(),
        "{\"n\":7,\"perm\":[1,2,3,4,5,6,6]}\n",
    );
    assert_eq!(not_a_perm.status, 3);

    let out_of_range = rankmod(&[&["encode"], GF8].concat(), "168\n");
    assert_eq!(out_of_range.status, 3);
}
