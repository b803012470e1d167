use gsio_core::battery::{run_criterion, CRITERIA};

const SEED: u64 = 42;

fn check(id: usize) {
    let r = run_criterion(id, SEED);
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn c01_assembly_matches_grid_oracle() {
    check(1);
}

#[test]
fn c02_berezin_exactness() {
    check(2);
}

#[test]
fn c03_doubling_commutator() {
    check(3);
}

#[test]
fn c04_semicommutator_rank() {
    check(4);
}

#[test]
fn c05_nehari() {
    check(5);
}

#[test]
fn c06_index_formula() {
    check(6);
}

#[test]
fn c07_extension_identity() {
    check(7);
}

#[test]
fn c08_wiener_hopf() {
    check(8);
}

#[test]
fn c09_inclusion_region() {
    check(9);
}

#[test]
fn c10_essential_spectrum_probe() {
    check(10);
}

#[test]
fn c11_foguel_hankel_radius() {
    check(11);
}

#[test]
fn c12_classification_truth_table() {
    check(12);
}

#[test]
fn criteria_are_numbered() {
    assert_eq!(CRITERIA.len(), 12);
}
