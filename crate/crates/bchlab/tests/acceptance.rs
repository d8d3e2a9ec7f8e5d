//! Acceptance gate: runs the full reproduction grid criterion by criterion
//! with an unlimited field budget (so nothing is skipped) and requires every
//! claim to PASS. One test per criterion; each prints a single summary line.

use bchlab::repro::{claims_for_criterion, criterion_label, run_claims};

fn run_criterion(criterion: u8) {
    let claims = claims_for_criterion(criterion);
    assert!(
        !claims.is_empty(),
        "criterion {criterion} has no claims registered"
    );
    let rows = run_claims(claims, u128::MAX);
    let failures: Vec<String> = rows
        .iter()
        .filter(|r| r.status != "PASS")
        .map(|r| format!("  [{}] {} — {}: {}", r.status, r.id, r.claim, r.detail))
        .collect();
    assert!(
        failures.is_empty(),
        "criterion {criterion} has {} non-passing claims:\n{}",
        failures.len(),
        failures.join("\n")
    );
    println!(
        "[criterion {criterion}] PASS — {} claims: {}",
        rows.len(),
        criterion_label(criterion)
    );
}

#[test]
fn criterion_1_weight_distribution_fixtures() {
    run_criterion(1);
}

#[test]
fn criterion_2_dimension_grid() {
    run_criterion(2);
}

#[test]
fn criterion_3_largest_leaders() {
    run_criterion(3);
}

#[test]
fn criterion_4_character_sum_distributions() {
    run_criterion(4);
}

#[test]
fn criterion_5_one_weight_codes_and_griesmer() {
    run_criterion(5);
}

#[test]
fn criterion_6_pointwise_weight_formula() {
    run_criterion(6);
}

#[test]
fn criterion_7_property_grid() {
    run_criterion(7);
}
