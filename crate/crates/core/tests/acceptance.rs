//! Acceptance criteria, one test each. Every test prints a single
//! PASS/FAIL line with the measured values before asserting.

use instanton_core::validation::{self, CheckOutcome, ValidationConfig};

fn report(outcome: CheckOutcome) {
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_1_kink_action() {
    report(validation::kink_action(&ValidationConfig::default()));
}

#[test]
fn criterion_2_bound_state_eigenvalues() {
    report(validation::bound_states(&ValidationConfig::default()));
}

#[test]
fn criterion_3_determinant_ratio_limit() {
    report(validation::determinant_ratio(&ValidationConfig::default()));
}

#[test]
fn criterion_4_harmonic_determinant_anchor() {
    report(validation::harmonic_anchor(&ValidationConfig::default()));
}

#[test]
fn criterion_5_elliptic_limit_recovery() {
    report(validation::elliptic_limit(&ValidationConfig::default()));
}

#[test]
fn criterion_6_euler_lagrange_and_first_integral() {
    report(validation::residuals(&ValidationConfig::default()));
}

#[test]
fn criterion_7_boundary_condition_solver() {
    report(validation::boundary_solver(&ValidationConfig::default()));
}

#[test]
fn criterion_8_finite_to_infinite_consistency() {
    report(validation::finite_to_infinite(&ValidationConfig::default()));
}
