use num_complex::Complex64 as c64;

use super::laurent::LaurentSymbol;
use super::rational::RationalSymbol;
use crate::error::{GsioError, Result};
use crate::fft;
use crate::tol;

const MAX_SAMPLES: usize = 1 << 22;

/// Fourier coefficients of `s` on modes `kmin..=kmax` with the default
/// tolerance [`tol::CTOL`].
pub fn fourier_coeffs(s: &RationalSymbol, kmin: i64, kmax: i64) -> Result<LaurentSymbol> {
    fourier_coeffs_tol(s, kmin, kmax, tol::CTOL)
}

/// Sup norm of `s` estimated on a 256-point grid.
fn sup_estimate(s: &RationalSymbol) -> f64 {
    fft::sample(256, |z| s.value_at(z)).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// Number of modes beyond the polynomial part after which the geometric
/// tail `scale * n^(mult-1) * rate^n / (1 - rate)` drops below `tol`.
fn tail_length(rate: f64, mult: usize, scale: f64, tol: f64) -> Option<usize> {
    if rate == 0.0 {
        return Some(0);
    }
    let denom = 1.0 - rate;
    (1..=MAX_SAMPLES).find(|&n| {
        let n_f = n as f64;
        scale * n_f.powi(mult as i32 - 1) * rate.powf(n_f) / denom <= tol
    })
}

fn polynomial_span(s: &RationalSymbol) -> usize {
    let num = s.numerator();
    let den_deg = s.denominator().max_mode().unwrap_or(0).max(0) as usize;
    num.bandwidth() + den_deg
}

/// As [`fourier_coeffs`] with an explicit absolute tolerance (relative to
/// `max(1, sup|s|)`).
///
/// Laurent inputs are read off exactly. Rational inputs are sampled on a
/// power-of-two grid sized from the decay rate of the denominator roots;
/// the result is accepted only if doubling the grid changes no requested
/// coefficient by more than the tolerance.
pub fn fourier_coeffs_tol(s: &RationalSymbol, kmin: i64, kmax: i64, ctol: f64) -> Result<LaurentSymbol> {
    if kmin > kmax {
        return Err(GsioError::InvalidArgument(format!("kmin {kmin} > kmax {kmax}")));
    }
    if let Some(l) = s.as_laurent() {
        return Ok(LaurentSymbol::from_pairs(l.terms().filter(|t| t.0 >= kmin && t.0 <= kmax)));
    }
    let scale = sup_estimate(s).max(1.0);
    let rate = s.decay_rate();
    let tail = tail_length(rate, s.worst_pole_multiplicity(), 10.0 * scale, ctol).ok_or_else(|| {
        GsioError::TailNotConverged { tolerance: ctol, detail: format!("decay rate {rate} too close to 1") }
    })?;
    let reach = kmin.unsigned_abs().max(kmax.unsigned_abs()) as usize;
    let mut m = (2 * (reach + polynomial_span(s) + tail) + 2).next_power_of_two().max(64);

    let grab = |m: usize| -> Vec<c64> {
        let coeffs = fft::analyze(&fft::sample(m, |z| s.value_at(z)));
        (kmin..=kmax).map(|k| coeffs[fft::index_of_mode(k, m)]).collect()
    };
    let mut current = grab(m);
    while 2 * m <= MAX_SAMPLES {
        let refined = grab(2 * m);
        let diff = current.iter().zip(&refined).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        if diff <= ctol * scale {
            return Ok(LaurentSymbol::from_coeffs(kmin, refined));
        }
        current = refined;
        m *= 2;
    }
    Err(GsioError::TailNotConverged {
        tolerance: ctol,
        detail: format!("grid refinement did not settle below {MAX_SAMPLES} samples"),
    })
}

/// Truncated Laurent expansion of `s` whose omitted coefficients are all
/// below `tol` (relative to `max(1, sup|s|)`).
pub fn laurent_approximation(s: &RationalSymbol, tol_abs: f64) -> Result<LaurentSymbol> {
    if let Some(l) = s.as_laurent() {
        return Ok(l.clone());
    }
    let scale = sup_estimate(s).max(1.0);
    let rate = s.decay_rate();
    let tail = tail_length(rate, s.worst_pole_multiplicity(), 10.0 * scale, tol_abs * scale).ok_or_else(|| {
        GsioError::TailNotConverged { tolerance: tol_abs, detail: format!("decay rate {rate} too close to 1") }
    })?;
    let reach = (polynomial_span(s) + tail) as i64;
    let full = fourier_coeffs_tol(s, -reach, reach, tol_abs * 1e-2)?;
    let cutoff = tol_abs * scale * 1e-2;
    Ok(LaurentSymbol::from_pairs(full.terms().filter(|t| t.1.norm() > cutoff)))
}
