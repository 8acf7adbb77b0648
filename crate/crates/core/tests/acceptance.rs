//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; the same checks back the `nullkit selftest` subcommand.

use std::time::Instant;

use nullkit::selftest::{run_criterion, SELFTEST_BUDGET_SECS};

fn check(id: u32) {
    let report = run_criterion(id);
    println!("{}", report.line());
    assert!(report.passed, "{}", report.line());
}

#[test]
fn criterion_01_coefficient_formula_oracle() {
    check(1);
}

#[test]
fn criterion_02_general_coefficient_formula() {
    check(2);
}

#[test]
fn criterion_03_interpolation_round_trips() {
    check(3);
}

#[test]
fn criterion_04_nullstellensatz_certificates() {
    check(4);
}

#[test]
fn criterion_05_permanent_suite() {
    check(5);
}

#[test]
fn criterion_06_alon_tarsi_counts() {
    check(6);
}

#[test]
fn criterion_07_z4_exception_reproduction() {
    check(7);
}

#[test]
fn criterion_08_padic_lemma() {
    check(8);
}

#[test]
fn criterion_09_application_checkers() {
    check(9);
}

#[test]
fn criterion_10_selftest_within_budget() {
    let start = Instant::now();
    let reports = nullkit::selftest::run_all();
    let elapsed = start.elapsed();
    for report in &reports {
        assert!(report.passed, "{}", report.line());
    }
    println!(
        "criterion 10 [pass] selftest wall clock ({} ms): budget {} s",
        elapsed.as_millis(),
        SELFTEST_BUDGET_SECS
    );
    assert!(
        elapsed.as_secs() < SELFTEST_BUDGET_SECS,
        "selftest took {:?}, budget {} s",
        elapsed,
        SELFTEST_BUDGET_SECS
    );
}
