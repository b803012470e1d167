//! Spectra, symbol recovery, Fredholm indices and spectral-inclusion regions.
//!
//! Raw eigenvalues of non-normal sections are not trusted as approximations
//! of the operator spectrum; essential-spectrum checks use
//! [`smallest_singular`] probes instead.

mod berezin;
mod classify;
mod dense;
mod region;

pub use berezin::{
    berezin_pair, berezin_section, extrapolate_to_zero, kernel_order, symbol_map_rho, symbol_map_rho_sections,
    SymbolPair,
};
pub use classify::{classify, Classification, Flags};
pub use dense::{dense_eigenvalues, dense_spectrum, numerical_rank, singular_values, smallest_singular};
pub use region::{
    hankel_distance, inclusion_region, unimodular_quotient_bound, ConvexHull, InclusionRegion, InclusionTester,
    Lattice, Membership,
};

use num_complex::Complex64 as c64;

use crate::error::{GsioError, Result};
use crate::fft;
use crate::section::{
    dual_toeplitz_section, hankel_section, index_map, l2_grading, toeplitz_section, CsrMatrix, FiniteSection,
};
use crate::symbol::{winding_number, LaurentSymbol, MatrixSymbol, RationalSymbol, SymbolRole};

/// `f(xi_j)` followed by `psi(xi_j)` on a uniform grid.
pub fn essential_spectrum_curve(h: &MatrixSymbol, grid: usize) -> Vec<c64> {
    let f = fft::sample(grid, |z| h.f().value_at(z));
    let psi = fft::sample(grid, |z| h.psi().value_at(z));
    f.into_iter().chain(psi).collect()
}

fn winding_of(s: &RationalSymbol, name: &str) -> Result<i64> {
    winding_number(s).map_err(|e| match e {
        GsioError::NotInvertibleOnCircle { modulus, .. } => GsioError::vanishes(name, modulus),
        other => other,
    })
}

/// `#(psi) - #(f)`.
pub fn fredholm_index(h: &MatrixSymbol) -> Result<i64> {
    h.require_role(SymbolRole::GsioH)?;
    Ok(winding_of(h.psi(), "psi")? - winding_of(h.f(), "f")?)
}

/// `max(|f|_inf, |psi|_inf)` on the grid; equal to the essential norm for
/// continuous symbols.
pub fn essential_norm_lower(h: &MatrixSymbol, grid: usize) -> f64 {
    essential_spectrum_curve(h, grid).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Finite-section approximation of a spectrum known up to a point.
#[derive(Clone, Debug)]
pub struct SectionSpectrum {
    pub points: Vec<c64>,
    pub finite_section_approximation: bool,
}

fn is_one(s: &RationalSymbol) -> bool {
    s.as_laurent().is_some_and(|l| *l == LaurentSymbol::one())
}

/// `sigma(T_f - H*_conj(phi) H_g) u {1}` when `psi = 1`, or
/// `sigma(dual T_psi - H_g H*_conj(phi)) u {1}` when `f = 1`.
pub fn special_case_spectrum(h: &MatrixSymbol, n: usize) -> Result<SectionSpectrum> {
    h.require_role(SymbolRole::GsioH)?;
    let hg = hankel_section(h.g(), n)?;
    let hphi = hankel_section(&h.phi().conj(), n)?;
    let m = if is_one(h.psi()) {
        toeplitz_section(h.f(), n)?.sub(&hphi.adjoint().mul(&hg)?)?
    } else if is_one(h.f()) {
        dual_toeplitz_section(h.psi(), n)?.sub(&hg.mul(&hphi.adjoint())?)?
    } else {
        return Err(GsioError::InvalidArgument("special-case spectrum needs psi = 1 or f = 1".into()));
    };
    let mut points = dense_spectrum(&m)?;
    points.push(c64::new(1.0, 0.0));
    Ok(SectionSpectrum { points, finite_section_approximation: true })
}

/// Section of `T z^n = z^(2n+1)` on the `L^2` grading of order `N`
/// (images outside the section are dropped).
pub fn doubling_operator(n: usize) -> Result<FiniteSection> {
    if n < 2 {
        return Err(GsioError::InvalidArgument("doubling operator needs N >= 2".into()));
    }
    let grading = l2_grading(n, 0);
    let index = index_map(&grading);
    let t = grading.iter().enumerate().filter_map(|(j, l)| {
        let target = crate::section::Label::new(0, 2 * l.mode + 1);
        index.get(&target).map(|&i| (i, j, c64::new(1.0, 0.0)))
    });
    let data = CsrMatrix::from_triplets(grading.len(), grading.len(), t.collect::<Vec<_>>());
    Ok(FiniteSection::new(data, grading.clone(), grading, n, n / 2 + 1))
}

/// `T* T - T T*` for the doubling operator: the projection onto even modes on
/// the interior (depth `>= N/2 + 1`).
pub fn doubling_commutator(n: usize) -> Result<FiniteSection> {
    let t = doubling_operator(n)?;
    let ts = t.adjoint();
    let c = ts.mul(&t)?.sub(&t.mul(&ts)?)?;
    Ok(c.with_margin(n / 2 + 1))
}

/// Smallest order whose doubling commutator supports the Berezin transform at `r`.
pub fn doubling_order(r: f64) -> Result<usize> {
    Ok(2 * kernel_order(r)? + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    #[test]
    fn curves() {
        let z = RationalSymbol::z_pow(1);
        let pts = essential_spectrum_curve(&MatrixSymbol::gsio(z.clone(), 0.0, 0.0, z), 32);
        assert!(pts.iter().all(|p| (p.norm() - 1.0).abs() < 1e-15));
        let pts = essential_spectrum_curve(&MatrixSymbol::gsio(2.0, 0.0, 0.0, -2.0), 8);
        assert!(pts.iter().all(|p| *p == c(2.0) || *p == c(-2.0)));
        let shifted = |a: f64| RationalSymbol::z_pow(1).add(&RationalSymbol::constant(a));
        let pts = essential_spectrum_curve(&MatrixSymbol::gsio(shifted(2.0), 0.0, 0.0, shifted(-2.0)), 16);
        assert!(pts[..16].iter().all(|p| ((p - c(2.0)).norm() - 1.0).abs() < 1e-14));
        assert!(pts[16..].iter().all(|p| ((p + c(2.0)).norm() - 1.0).abs() < 1e-14));
    }

    #[test]
    fn index_examples() {
        let z = |k| RationalSymbol::z_pow(k);
        assert_eq!(fredholm_index(&MatrixSymbol::gsio(z(2), z(-1), z(1), z(3))).unwrap(), 1);
        assert_eq!(fredholm_index(&MatrixSymbol::gsio(z(1), 0.0, 0.0, 1.0)).unwrap(), -1);
        let cos = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (-1, c(1.0))]));
        assert!(matches!(
            fredholm_index(&MatrixSymbol::gsio(cos, 0.0, 0.0, 1.0)),
            Err(GsioError::NotInvertibleOnCircle { .. })
        ));
    }

    #[test]
    fn essential_norms() {
        assert_eq!(essential_norm_lower(&MatrixSymbol::gsio(3.0, 0.0, 0.0, -1.0), 64), 3.0);
        let cos = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (-1, c(1.0))]));
        assert!((essential_norm_lower(&MatrixSymbol::gsio(cos, 0.0, 0.0, 0.0), 64) - 2.0).abs() < 1e-14);
        let g = RationalSymbol::z_pow(-1);
        assert_eq!(essential_norm_lower(&MatrixSymbol::gsio(0.0, 0.0, g, 0.0), 64), 0.0);
    }

    fn sorted_re(mut v: Vec<c64>) -> Vec<f64> {
        v.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        v.iter().map(|z| z.re).collect()
    }

    #[test]
    fn special_case_examples() {
        let z = RationalSymbol::z_pow(1);
        let s = special_case_spectrum(&MatrixSymbol::gsio(z.clone(), 0.0, 0.0, 1.0), 6).unwrap();
        assert_eq!(s.points.len(), 7);
        assert!(s.points[..6].iter().all(|l| l.norm() < 1e-6));

        let s = special_case_spectrum(&MatrixSymbol::gsio(0.0, z.clone(), z.conj(), 1.0), 4).unwrap();
        let mut re = sorted_re(s.points);
        re.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        assert_eq!(re.len(), 3);
        assert!((re[0] + 1.0).abs() < 1e-12 && re[1].abs() < 1e-12 && (re[2] - 1.0).abs() < 1e-12);

        let s = special_case_spectrum(&MatrixSymbol::gsio(1.0, z.clone(), z.conj(), 0.0), 4).unwrap();
        let mut re = sorted_re(s.points);
        re.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        assert_eq!(re.len(), 3);
        assert!(special_case_spectrum(&MatrixSymbol::gsio(z.clone(), 0.0, 0.0, z), 4).is_err());
    }

    #[test]
    fn doubling_is_even_projection_inside() {
        let c4 = doubling_commutator(4).unwrap();
        let inner = c4.interior(c4.interior_margin());
        assert_eq!(inner.rows().iter().map(|l| l.mode).collect::<Vec<_>>(), vec![0, -1]);
        assert_eq!(inner.data().to_dense()[(0, 0)], c(1.0));
        assert_eq!(inner.data().nnz(), 1);
        let n = 64;
        let cn = doubling_commutator(n).unwrap();
        for (i, l) in cn.rows().iter().enumerate() {
            if cn.depth(*l) >= cn.interior_margin() {
                let want = if l.mode.rem_euclid(2) == 0 { 1.0 } else { 0.0 };
                assert_eq!(cn.get(i, i), c(want), "mode {}", l.mode);
            }
        }
    }

    #[test]
    fn doubling_berezin() {
        for r in [0.9, 0.99] {
            let s = doubling_commutator(doubling_order(r).unwrap()).unwrap();
            let (a, b) = berezin_section(&s, r, c64::from_polar(1.0, 0.4)).unwrap();
            assert!((a.re - 1.0 / (1.0 + r * r)).abs() < 1e-8);
            assert!((b.re - r * r / (1.0 + r * r)).abs() < 1e-8);
        }
        let s = doubling_commutator(100).unwrap();
        assert!(matches!(berezin_section(&s, 0.99, c(1.0)), Err(GsioError::OrderTooSmall { .. })));
    }
}
