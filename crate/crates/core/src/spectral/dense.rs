use faer::Mat;
use num_complex::Complex64 as c64;

use crate::error::{GsioError, Result};
use crate::section::FiniteSection;

/// Eigenvalues of a square dense matrix, checked against the backward error
/// `max_j |A v_j - l_j v_j| / |v_j| <= 1e-10 |A|_2`.
///
/// Columns without a finite eigenvector (defective eigenvalues) are checked
/// only through the trace: `|sum l_j - tr A| <= 1e-8 n |A|_2`.
pub fn dense_eigenvalues(a: &Mat<c64>) -> Result<Vec<c64>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(GsioError::InvalidArgument("spectrum of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let eig = a.eigen().map_err(|e| GsioError::EigSolverFailure(format!("{e:?}")))?;
    let u = eig.U();
    let s = eig.S().column_vector();
    let scale = a.norm_l2().max(f64::MIN_POSITIVE);
    let av = a * u;
    let mut worst = 0.0f64;
    let mut defective = false;
    for j in 0..n {
        let vn = u.col(j).norm_l2();
        if !vn.is_finite() || vn == 0.0 {
            defective = true;
            continue;
        }
        let r = (0..n).map(|i| (av[(i, j)] - s[j] * u[(i, j)]).norm_sqr()).sum::<f64>().sqrt() / vn;
        if !r.is_finite() {
            defective = true;
            continue;
        }
        worst = worst.max(r);
    }
    if !(worst <= 1e-10 * scale) {
        return Err(GsioError::EigSolverFailure(format!("backward error {worst:e} exceeds 1e-10 * {scale:e}")));
    }
    let values: Vec<c64> = (0..n).map(|j| s[j]).collect();
    if defective {
        let trace: c64 = (0..n).map(|i| a[(i, i)]).sum();
        let drift = (values.iter().sum::<c64>() - trace).norm();
        if !(drift <= 1e-8 * n as f64 * scale) || values.iter().any(|v| !v.is_finite()) {
            return Err(GsioError::EigSolverFailure(format!("eigenvalue sum misses the trace by {drift:e}")));
        }
    }
    Ok(values)
}

/// All eigenvalues of a finite section.
pub fn dense_spectrum(s: &FiniteSection) -> Result<Vec<c64>> {
    if !s.is_square() {
        return Err(GsioError::InvalidArgument("spectrum of a non-square section".into()));
    }
    dense_eigenvalues(&s.to_dense())
}

/// Singular values in decreasing order.
pub fn singular_values(a: &Mat<c64>) -> Result<Vec<f64>> {
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(Vec::new());
    }
    let mut sv = a.singular_values().map_err(|e| GsioError::EigSolverFailure(format!("{e:?}")))?;
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(sv)
}

/// `sigma_min(S - lambda I)`.
pub fn smallest_singular(s: &FiniteSection, lambda: c64) -> Result<f64> {
    if !s.is_square() {
        return Err(GsioError::InvalidArgument("pseudospectral probe of a non-square section".into()));
    }
    Ok(singular_values(&s.shift(lambda).to_dense())?.last().copied().unwrap_or(0.0))
}

/// Number of singular values above `tol`.
pub fn numerical_rank(a: &Mat<c64>, tol: f64) -> Result<usize> {
    Ok(singular_values(a)?.iter().filter(|&&s| s > tol).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::section::toeplitz_section;
    use crate::symbol::{LaurentSymbol, RationalSymbol};

    #[test]
    fn identity_spectrum() {
        let ev = dense_eigenvalues(&Mat::<c64>::identity(4, 4)).unwrap();
        assert!(ev.iter().all(|l| (l - c64::new(1.0, 0.0)).norm() < 1e-14));
    }

    #[test]
    fn shift_section_is_nilpotent() {
        let t = toeplitz_section(&RationalSymbol::z_pow(1), 8).unwrap();
        let ev = dense_spectrum(&t).unwrap();
        assert_eq!(ev.len(), 8);
        assert!(ev.iter().all(|l| l.norm() < 1e-6), "{ev:?}");
    }

    /// Tridiagonal Toeplitz: eigenvalues 2 cos(k pi / (N + 1)).
    #[test]
    fn tridiagonal_formula() {
        let n = 12;
        let s = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, 1.0.into()), (-1, 1.0.into())]));
        let mut ev: Vec<f64> = dense_spectrum(&toeplitz_section(&s, n).unwrap()).unwrap().iter().map(|l| l.re).collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want: Vec<f64> =
            (1..=n).map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos()).collect();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in ev.iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn shift_pseudospectrum() {
        let t = toeplitz_section(&RationalSymbol::z_pow(1), 64).unwrap();
        let lambda = 0.9;
        let inside = smallest_singular(&t, c64::new(lambda, 0.0)).unwrap();
        // (S - l)^-1 is lower-triangular Toeplitz with entries -l^-(j-k+1)
        let inv = Mat::<c64>::from_fn(64, 64, |j, k| {
            if j >= k { c64::new(-lambda.powi(-((j - k) as i32) - 1), 0.0) } else { c64::new(0.0, 0.0) }
        });
        let oracle = 1.0 / singular_values(&inv).unwrap()[0];
        assert!((inside - oracle).abs() <= 1e-8 * oracle, "{inside} vs {oracle}");
        assert!(inside <= lambda.powi(64), "{inside}");
        assert!(smallest_singular(&t, c64::new(2.0, 0.0)).unwrap() >= 1.0);
        let id = toeplitz_section(&RationalSymbol::constant(1.0), 5).unwrap();
        assert!(smallest_singular(&id, c64::new(1.0, 0.0)).unwrap() < 1e-15);
    }
}
