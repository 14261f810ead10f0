//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Criterion 10 runs the shipped binary end to end.

use std::process::Command;

use quatslice_cli::battery;

fn check(result: battery::CriterionResult) {
    println!("{}", result.line());
    assert!(result.pass, "{}", result.line());
}

const SEED: u64 = 0;

#[test]
fn criterion_01_representation_formula() {
    let r = battery::criterion_1(SEED);
    assert!(
        r.elapsed_s < 5.0,
        "representation criterion took {:.2}s, budget 5s",
        r.elapsed_s
    );
    check(r);
}

#[test]
fn criterion_02_slice_product_semantics() {
    check(battery::criterion_2(SEED));
}

#[test]
fn criterion_03_reciprocal_identities() {
    check(battery::criterion_3(SEED));
}

#[test]
fn criterion_04_zero_trichotomy() {
    check(battery::criterion_4(SEED));
}

#[test]
fn criterion_05_identity_principle() {
    check(battery::criterion_5(SEED));
}

#[test]
fn criterion_06_max_min_modulus() {
    check(battery::criterion_6(SEED));
}

#[test]
fn criterion_07_open_mapping() {
    let r = battery::criterion_7(SEED);
    assert!(
        r.elapsed_s < 60.0,
        "open mapping criterion took {:.2}s, budget 60s",
        r.elapsed_s
    );
    check(r);
}

#[test]
fn criterion_08_expansion_identity() {
    check(battery::criterion_8(SEED));
}

#[test]
fn criterion_09_calculus_consistency() {
    check(battery::criterion_9(SEED));
}

#[test]
fn criterion_10_verify_cli() {
    let start = std::time::Instant::now();
    let output = Command::new(env!("CARGO_BIN_EXE_quatslice"))
        .args(["verify", "--seed", "0"])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed().as_secs_f64();
    let stdout = String::from_utf8_lossy(&output.stdout);
    println!(
        "criterion 10 [{}] verify CLI ({:.2}s)",
        if output.status.success() { "PASS" } else { "FAIL" },
        elapsed
    );
    println!("{}", stdout);
    assert!(
        output.status.success(),
        "verify exited with {:?}:\n{}",
        output.status.code(),
        stdout
    );
    assert!(elapsed < 180.0, "verify took {:.2}s, budget 180s", elapsed);
}
