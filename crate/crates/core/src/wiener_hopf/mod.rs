//! Wiener–Hopf factorization `F = F_- diag(z^kappa) F_+` of scalar and 2x2
//! rational symbols, and Fredholm verdicts for GSIOs built on it.

mod matrix;
mod scalar;
mod verdict;

pub use matrix::{matrix_residual, wh_matrix2, KERNEL_REL};
pub use scalar::wh_scalar;
pub use verdict::{fredholm_verdict, FredholmVerdict, VerdictStatus};

use crate::symbol::{MatrixSymbol, RationalSymbol};

/// Largest accepted reconstruction residual on the 512-point grid.
pub const RESIDUAL_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub enum Factors {
    Scalar { minus: RationalSymbol, plus: RationalSymbol },
    Matrix { minus: MatrixSymbol, plus: MatrixSymbol },
}

#[derive(Clone, Debug)]
pub struct WHFactorization {
    pub factors: Factors,
    /// Partial indices, descending.
    pub kappa: Vec<i64>,
    pub reconstruction_residual: f64,
    /// Whether `F_+(0)` was brought to upper-triangular form with positive diagonal.
    pub normalized: bool,
    /// Fourier truncation of matrix factors.
    pub bandwidth: Option<usize>,
}

/// `(dim ker, dim coker)` of a Toeplitz operator with partial indices `kappa`.
pub fn kernel_dims(kappa: &[i64]) -> (u64, u64) {
    let ker = kappa.iter().filter(|&&k| k < 0).map(|k| k.unsigned_abs()).sum();
    let coker = kappa.iter().filter(|&&k| k > 0).map(|&k| k as u64).sum();
    (ker, coker)
}
