//! End-to-end tests of the binary: exit codes, formats, and the observable
//! precision escalation.

use std::process::{Command, Output};

use pillai_core::certificate::{claims_registry, parse_json, ClaimOutcome, Stage, Verdict};

fn pillai(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pillai"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn cf_json_verifies_and_parses() {
    let out = pillai(&["cf", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let cert = parse_json(&stdout_str(&out)).expect("valid certificate json");
    assert_eq!(cert.verdict, Verdict::Verified);
    assert!(cert.claims.iter().all(|c| c.stage == Stage::Cf));
    assert!(cert.claims.iter().any(|c| c.id == "cf_q98"));
}

#[test]
fn search_mismatch_exits_one() {
    let out = pillai(&["search", "--m-max", "30", "--n-max", "30", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let cert = parse_json(&stdout_str(&out)).expect("valid certificate json");
    assert_eq!(cert.verdict, Verdict::MismatchFound);
    assert!(cert
        .claims
        .iter()
        .any(|c| c.id == "search_two_representation_set" && c.outcome == ClaimOutcome::Mismatch));
}

#[test]
fn bad_precision_exits_three() {
    let out = pillai(&["cf", "--precision-bits", "32"]);
    assert_eq!(out.status.code(), Some(3));
    let out = pillai(&["cf", "--precision-bits", "8192"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn missing_subcommand_exits_three() {
    let out = pillai(&[]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bounds_csv_has_one_row_per_claim() {
    let out = pillai(&["bounds", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("id,stage,mode,outcome,printed,corrected,recomputed,detail")
    );
    let bounds_claims = claims_registry()
        .unwrap()
        .iter()
        .filter(|c| c.stage == Stage::Bounds)
        .count();
    assert_eq!(lines.count(), bounds_claims);
    assert!(text.contains("chain_case1_shifted"));
}

#[test]
fn certify_writes_a_full_verified_certificate() {
    let dir = std::env::temp_dir().join("pillai-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("certificate.json");
    let out = pillai(&["certify", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty(), "--out should leave stdout empty");
    let cert = parse_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(cert.verdict, Verdict::Verified);
    assert_eq!(cert.summary.total, claims_registry().unwrap().len());
    assert_eq!(cert.summary.mismatched, 0);
    assert!(cert.runtime_notes.iter().any(|n| n.contains("continued fractions certified")));
}

#[test]
fn low_base_precision_escalates_observably() {
    let out = pillai(&["reduce", "--precision-bits", "64", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let cert = parse_json(&stdout_str(&out)).unwrap();
    assert_eq!(cert.verdict, Verdict::Verified);
    assert_eq!(cert.precision_bits, 64);
    // The campaigns cannot decide anything at 64 bits and must report the
    // climb to a decidable precision.
    assert!(cert
        .runtime_notes
        .iter()
        .any(|n| n.contains("escalated from 64 to")));
    // The reduce stages pull cf and bounds in, but not the search.
    assert!(cert.claims.iter().all(|c| c.stage != Stage::Search));
    assert!(cert.claims.iter().any(|c| c.id == "chain_n_upper"));
}
