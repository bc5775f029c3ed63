//! The nine acceptance criteria, one test each, at their stated tolerances.

use supnorm::acceptance::run_criterion;

const SEED: u64 = 0;

fn check(id: u8) {
    let outcome = run_criterion(id, SEED);
    println!("{} ({:.2?})", outcome.line(), outcome.elapsed);
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_1_verification_table() {
    check(1);
}

#[test]
fn criterion_2_lattice_defect() {
    check(2);
}

#[test]
fn criterion_3_satake_oracle() {
    check(3);
}

#[test]
fn criterion_4_satake_structure() {
    check(4);
}

#[test]
fn criterion_5_delta_sum() {
    check(5);
}

#[test]
fn criterion_6_sphere_polynomial() {
    check(6);
}

#[test]
fn criterion_7_diagonal_avoidance() {
    check(7);
}

#[test]
fn criterion_8_nonvanishing() {
    check(8);
}

#[test]
fn criterion_9_amplifier_stability() {
    check(9);
}
