//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines;
//! the same checks back `operadics selftest`.

use operadics::acceptance::{self, DEFAULT_SEED};
use operadics::report::Check;

fn assert_criterion(check: Check) {
    println!(
        "criterion [{}]: {}",
        if check.passed { "PASS" } else { "FAIL" },
        check.name
    );
    for d in &check.details {
        println!("    {d}");
    }
    assert!(check.passed, "{}: {:?}", check.name, check.details);
}

#[test]
fn criterion_01_free_operad_laws() {
    assert_criterion(acceptance::criterion_1_free_operad_laws().unwrap());
}

#[test]
fn criterion_02_catalan_level_counts() {
    assert_criterion(acceptance::criterion_2_catalan().unwrap());
}

#[test]
fn criterion_03_normal_form_uniqueness() {
    assert_criterion(acceptance::criterion_3_normal_form_uniqueness().unwrap());
}

#[test]
fn criterion_04_pushout_census() {
    assert_criterion(acceptance::criterion_4_pushout_census(1).unwrap());
}

#[test]
fn criterion_05_identity_suites() {
    assert_criterion(acceptance::criterion_5_identity_suites().unwrap());
}

#[test]
fn criterion_06_comparison_lemma() {
    assert_criterion(acceptance::criterion_6_comparison_lemma().unwrap());
}

#[test]
fn criterion_07_envelope_formula() {
    assert_criterion(acceptance::criterion_7_envelope_formula().unwrap());
}

#[test]
fn criterion_08_splitting_components() {
    assert_criterion(acceptance::criterion_8_splitting_components().unwrap());
}

#[test]
fn criterion_09_module_endomorphisms() {
    assert_criterion(acceptance::criterion_9_module_endomorphisms().unwrap());
}

#[test]
fn criterion_10_distributive_law() {
    assert_criterion(acceptance::criterion_10_distributive_law(DEFAULT_SEED).unwrap());
}

#[test]
fn criterion_11_discrete_limits() {
    assert_criterion(acceptance::criterion_11_discrete_limits().unwrap());
}

#[test]
fn full_suite_matches_the_selftest_entry_point() {
    let report = acceptance::run_all(DEFAULT_SEED, 2).unwrap();
    println!("{}", report.to_text());
    assert!(report.passed());
    // Eleven criteria plus the coverage smoke.
    assert_eq!(report.checks.len(), 12);
}
