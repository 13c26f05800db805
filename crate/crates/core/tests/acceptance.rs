//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Run with `--nocapture` to see the lines.

use kleinian::par::Mode;
use kleinian::verify::{run, DEFAULT_SEED};
use std::time::Instant;

fn check(id: usize, limit_secs: Option<u64>) {
    let start = Instant::now();
    let result = run(id, DEFAULT_SEED, Mode::from_env());
    let elapsed = start.elapsed();
    let verdict = if result.passed { "PASS" } else { "FAIL" };
    println!(
        "[{}] criterion {}: {} ({:.1}s)",
        verdict,
        id,
        result.name,
        elapsed.as_secs_f64()
    );
    if !result.passed {
        println!("{}", serde_json::to_string_pretty(&result.details.to_json()).unwrap());
    }
    assert!(result.passed, "criterion {} ({}) failed", id, result.name);
    if let Some(limit) = limit_secs {
        assert!(
            elapsed.as_secs() <= limit,
            "criterion {} exceeded {}s ({:.1}s)",
            id,
            limit,
            elapsed.as_secs_f64()
        );
    }
}

#[test]
fn criterion_01_invariant_ring_table() {
    check(1, Some(60));
}

#[test]
fn criterion_02_socle_certification() {
    check(2, None);
}

#[test]
fn criterion_03_derivation_degrees() {
    check(3, None);
}

#[test]
fn criterion_04_socle_map() {
    check(4, None);
}

#[test]
fn criterion_05_pair_deformation_goldens() {
    check(5, None);
}

#[test]
fn criterion_06_mckay_and_folding() {
    check(6, None);
}

#[test]
fn criterion_07_orbit_sampling() {
    check(7, None);
}

#[test]
fn criterion_08_cbh_flatness_and_commutativity() {
    check(8, Some(600));
}

#[test]
fn criterion_09_invariant_embedding() {
    check(9, None);
}

#[test]
fn criterion_10_bracket_extraction() {
    check(10, None);
}

#[test]
fn criterion_11_infrastructure_properties() {
    check(11, Some(300));
}
