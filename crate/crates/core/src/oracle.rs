//! Brute-force oracles: `R_H` applied on a sample grid through pointwise
//! products and FFT mode splits, independent of section assembly.

use num_complex::Complex64 as c64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GsioError, Result};
use crate::fft;
use crate::section::gsio_section;
use crate::symbol::{LaurentSymbol, MatrixSymbol, SymbolRole};

const ZERO: c64 = c64::new(0.0, 0.0);

/// Samples of a function at `M` uniform points of the circle, `M` a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    samples: Vec<c64>,
}

impl GridFunction {
    pub fn new(samples: Vec<c64>) -> Result<Self> {
        if !samples.len().is_power_of_two() {
            return Err(GsioError::InvalidArgument(format!("sample count {} is not a power of two", samples.len())));
        }
        Ok(GridFunction { samples })
    }

    pub fn from_laurent(x: &LaurentSymbol, m: usize) -> Result<Self> {
        Self::new(fft::sample(m, |z| x.value_at(z)))
    }

    pub fn from_coeffs(x: &LaurentSymbol, m: usize) -> Result<Self> {
        let mut c = vec![ZERO; m];
        for (k, v) in x.terms() {
            c[fft::index_of_mode(k, m)] += v;
        }
        Self::new(fft::synthesize(&c))
    }

    pub fn samples(&self) -> &[c64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Fourier coefficients on modes `-M/2+1 .. M/2-1`.
    pub fn coeffs(&self) -> LaurentSymbol {
        let m = self.len() as i64;
        let c = fft::analyze(&self.samples);
        LaurentSymbol::from_pairs((-m / 2 + 1..m / 2).map(|k| (k, c[fft::index_of_mode(k, m as usize)])))
    }

    /// Largest mode magnitude carrying a coefficient above `1e-13` relative to the peak.
    pub fn bandwidth(&self) -> usize {
        let m = self.len();
        let c = fft::analyze(&self.samples);
        let peak = c.iter().map(|v| v.norm()).fold(0.0, f64::max);
        (0..m)
            .filter(|&k| c[k].norm() > 1e-13 * peak)
            .map(|k| fft::mode_of_index(k, m).unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

/// `P+ x` and `P- x` as sample vectors.
fn split(samples: &[c64]) -> (Vec<c64>, Vec<c64>) {
    let m = samples.len();
    let c = fft::analyze(samples);
    let mut plus = vec![ZERO; m];
    let mut minus = vec![ZERO; m];
    for (k, v) in c.into_iter().enumerate() {
        if fft::mode_of_index(k, m) >= 0 {
            plus[k] = v;
        } else {
            minus[k] = v;
        }
    }
    (fft::synthesize(&plus), fft::synthesize(&minus))
}

/// `R_H x = P+ f P+ x + P- g P+ x + P+ phi P- x + P- psi P- x` on the grid.
pub fn grid_apply(h: &MatrixSymbol, x: &GridFunction) -> Result<GridFunction> {
    let d = h
        .laurent_bandwidth()
        .ok_or_else(|| GsioError::InvalidArgument("grid oracle needs Laurent entries".into()))?;
    let m = x.len();
    let bw = d.max(x.bandwidth());
    if m < 4 * bw {
        return Err(GsioError::AliasRisk { samples: m, bandwidth: bw });
    }
    let sample = |i, j| fft::sample(m, |z| h.entry(i, j).value_at(z));
    let (f, phi, g, psi) = (sample(0, 0), sample(0, 1), sample(1, 0), sample(1, 1));
    let (xp, xm) = split(&x.samples);
    let top: Vec<c64> = (0..m).map(|j| f[j] * xp[j] + phi[j] * xm[j]).collect();
    let bottom: Vec<c64> = (0..m).map(|j| g[j] * xp[j] + psi[j] * xm[j]).collect();
    let (top_plus, _) = split(&top);
    let (_, bottom_minus) = split(&bottom);
    GridFunction::new(top_plus.iter().zip(&bottom_minus).map(|(a, b)| a + b).collect())
}

/// Laurent entries `[[f, phi], [g, psi]]` with coefficients uniform in `[0,1)^2`
/// on modes `-degree..=degree`.
pub fn random_symbol(degree: usize, seed: u64) -> MatrixSymbol {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = degree as i64;
    let mut entry = || LaurentSymbol::from_pairs((-d..=d).map(|k| (k, c64::new(rng.random(), rng.random()))).collect::<Vec<_>>());
    let (f, phi, g, psi) = (entry(), entry(), entry(), entry());
    MatrixSymbol::from_laurent([[f, phi], [g, psi]], SymbolRole::GsioH)
}

/// Seed of trial `t` derived from a base seed.
pub fn trial_seed(seed: u64, t: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(t.wrapping_mul(0xD1B5_4A32_D192_ED03)) ^ 0x5851_F42D
}

/// Random test vector supported on modes at depth `>= margin` of an order-`n` section.
pub fn interior_vector(n: usize, margin: usize, seed: u64) -> LaurentSymbol {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, m) = (n as i64, margin as i64);
    let modes = (-n + m..0).chain(0..n - m);
    LaurentSymbol::from_pairs(modes.map(|k| (k, c64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))).collect::<Vec<_>>())
}

/// Max relative residual between `gsio_section(H, N) x` and the grid oracle,
/// over `trials` random interior-supported vectors.
pub fn compare_action(h: &MatrixSymbol, n: usize, trials: usize, seed: u64) -> Result<f64> {
    if trials == 0 {
        return Err(GsioError::InvalidArgument("compare_action needs at least one trial".into()));
    }
    let d = h
        .laurent_bandwidth()
        .ok_or_else(|| GsioError::InvalidArgument("grid oracle needs Laurent entries".into()))?;
    if n <= d {
        return Err(GsioError::InsufficientOrder { order: n, bandwidth: d });
    }
    let section = gsio_section(h, n)?;
    let m = (4 * (n + d)).next_power_of_two();
    let residuals = (0..trials)
        .into_par_iter()
        .map(|t| {
            let x = interior_vector(n, d, trial_seed(seed, t as u64));
            let coeffs: Vec<c64> = section.rows().iter().map(|l| x.coeff(l.mode)).collect();
            let assembled = section.data().matvec(&coeffs);
            let oracle = grid_apply(h, &GridFunction::from_coeffs(&x, m)?)?.coeffs();
            let reference: Vec<c64> = section.rows().iter().map(|l| oracle.coeff(l.mode)).collect();
            let scale = reference.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
            let diff = assembled.iter().zip(&reference).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            Ok(diff / scale)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(residuals.into_iter().fold(0.0, f64::max))
}
