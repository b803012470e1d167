use gsio_core::c64;
use gsio_core::oracle::{grid_apply, interior_vector, random_symbol, GridFunction};
use gsio_core::section::{apply_v_conjugation, gsio_section, v_basis_map};
use gsio_core::symbol::{LaurentSymbol, MatrixSymbol, RationalSymbol};
use proptest::prelude::*;

fn adjoint_symbol(h: &MatrixSymbol) -> MatrixSymbol {
    let c = |s: &RationalSymbol| s.conj();
    MatrixSymbol::gsio(c(h.f()), c(h.g()), c(h.phi()), c(h.psi()))
}

fn inner(a: &GridFunction, b: &GridFunction) -> c64 {
    let m = a.len() as f64;
    a.samples().iter().zip(b.samples()).map(|(x, y)| x * y.conj()).sum::<c64>() / m
}

fn combine(a: c64, x: &GridFunction, b: c64, y: &GridFunction) -> GridFunction {
    GridFunction::new(x.samples().iter().zip(y.samples()).map(|(u, v)| a * u + b * v).collect()).unwrap()
}

fn max_diff(x: &GridFunction, y: &GridFunction) -> f64 {
    x.samples().iter().zip(y.samples()).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max)
}

fn vector(seed: u64) -> GridFunction {
    GridFunction::from_coeffs(&interior_vector(8, 0, seed), 64).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn section_of_adjoint_symbol_is_adjoint(seed in any::<u64>(), degree in 0usize..4, n in 8usize..24) {
        let h = random_symbol(degree, seed);
        let a = gsio_section(&h, n).unwrap().adjoint();
        let b = gsio_section(&adjoint_symbol(&h), n).unwrap();
        prop_assert_eq!(a.rows(), b.rows());
        prop_assert!(a.data().sub(b.data()).max_abs() <= 1e-12);
    }

    #[test]
    fn v_conjugation_matches_symbol_map(seed in any::<u64>(), degree in 0usize..4, n in 8usize..24) {
        let h = random_symbol(degree, seed);
        let a = v_basis_map(&gsio_section(&h, n).unwrap()).unwrap();
        let b = gsio_section(&apply_v_conjugation(&h).unwrap(), n).unwrap();
        prop_assert!(a.data().sub(b.data()).max_abs() <= 1e-12);
    }

    #[test]
    fn grid_apply_is_linear(seed in any::<u64>(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let h = random_symbol(3, seed);
        let (x, y) = (vector(seed ^ 1), vector(seed ^ 2));
        let a = c64::new(re, im);
        let one = c64::new(1.0, 0.0);
        let lhs = grid_apply(&h, &combine(a, &x, one, &y)).unwrap();
        let rhs = combine(a, &grid_apply(&h, &x).unwrap(), one, &grid_apply(&h, &y).unwrap());
        prop_assert!(max_diff(&lhs, &rhs) <= 1e-10);
    }

    #[test]
    fn grid_apply_adjoint_pairing(seed in any::<u64>()) {
        let h = random_symbol(3, seed);
        let (x, y) = (vector(seed ^ 3), vector(seed ^ 4));
        let lhs = inner(&grid_apply(&h, &x).unwrap(), &y);
        let rhs = inner(&x, &grid_apply(&adjoint_symbol(&h), &y).unwrap());
        prop_assert!((lhs - rhs).norm() <= 1e-10);
    }

    #[test]
    fn section_action_matches_grid(seed in any::<u64>(), degree in 0usize..3) {
        let h = random_symbol(degree, seed);
        let n = 16;
        let x = interior_vector(n, degree, seed ^ 5);
        let s = gsio_section(&h, n).unwrap();
        let coords: Vec<c64> = s.cols().iter().map(|l| x.coeff(l.mode)).collect();
        let y = s.data().matvec(&coords);
        let oracle = grid_apply(&h, &GridFunction::from_coeffs(&x, 128).unwrap()).unwrap().coeffs();
        let err = s.rows().iter().zip(&y).map(|(l, v)| (oracle.coeff(l.mode) - v).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-10);
    }
}

#[test]
fn identity_symbol_acts_as_identity() {
    let h = MatrixSymbol::gsio(1.0, 0.0, 0.0, 1.0);
    let x = GridFunction::from_coeffs(&LaurentSymbol::from_pairs([(2, c64::new(1.0, 0.5)), (-3, c64::new(0.0, 1.0))]), 32).unwrap();
    assert!(max_diff(&grid_apply(&h, &x).unwrap(), &x) <= 1e-14);
}
