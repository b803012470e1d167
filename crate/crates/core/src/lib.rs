//! Finite-section numerics for generalized singular integral operators
//!
//! `R_H = P+ f P+ + P- g P+ + P+ phi P- + P- psi P-` on `L^2` of the unit
//! circle, with 2x2 symbol `H = [[f, phi], [g, psi]]`.
//!
//! - [`symbol`]: Laurent and rational symbols, Fourier coefficients, winding numbers
//! - [`section`]: finite-section matrices of Toeplitz, Hankel and block operators
//! - [`spectral`]: spectra, Berezin-type symbol recovery, Fredholm index, inclusion regions
//! - [`wiener_hopf`]: scalar and 2x2 Wiener-Hopf factorization and Fredholm verdicts
//! - [`oracle`]: independent grid-based application of `R_H` used to validate assembly
//! - [`format`]: the JSON symbol file schema
//! - [`battery`]: the reproducibility battery run by `gsio verify`

pub mod battery;
pub mod error;
pub mod fft;
pub mod format;
pub mod oracle;
pub mod section;
pub mod spectral;
pub mod symbol;
pub mod wiener_hopf;

pub use error::{GsioError, Result};
pub use num_complex::Complex64 as c64;

/// Caps engine parallelism (rayon pool and dense factorizations) at `n` threads.
/// Only the first call configures the rayon pool.
pub fn set_threads(n: usize) {
    let n = n.max(1);
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    faer::set_global_parallelism(if n == 1 { faer::Par::Seq } else { faer::Par::rayon(n) });
}

/// Numerical thresholds shared across the engines.
pub mod tol {
    /// Roots with `| |r| - 1 | <= RHO_TOL` count as lying on the circle.
    pub const RHO_TOL: f64 = 1e-9;
    /// Default absolute tolerance for computed Fourier coefficients.
    pub const CTOL: f64 = 1e-12;
    /// Coefficients below this magnitude are dropped from canonical symbols.
    pub const TRIM: f64 = 1e-14;
    /// Allowed deviation of an evaluation point from the unit circle.
    pub const UNIMODULAR: f64 = 1e-12;
}
