use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as c64;

use super::rational::{laurent_roots, on_circle, RationalSymbol};
use crate::error::{GsioError, Result};

const PHASE_SAMPLES: usize = 4096;

/// Winding number of `s` about the origin along the unit circle.
///
/// Counted from roots (inside zeros minus inside poles, plus the monomial
/// exponent) and cross-checked by unwinding the sampled phase.
pub fn winding_number(s: &RationalSymbol) -> Result<i64> {
    let algebraic = algebraic_winding(s)?;
    let sampled = sampled_winding(s)?;
    if algebraic != sampled {
        return Err(GsioError::WindingMismatch { algebraic, sampled });
    }
    Ok(algebraic)
}

fn algebraic_winding(s: &RationalSymbol) -> Result<i64> {
    let num = s.numerator();
    if num.is_zero() {
        return Err(GsioError::vanishes("symbol", 0.0));
    }
    let roots = laurent_roots(num)?;
    let mut inside = 0i64;
    for r in &roots {
        if on_circle(*r) {
            return Err(GsioError::vanishes("symbol", r.norm()));
        }
        if r.norm() < 1.0 {
            inside += 1;
        }
    }
    let poles = s.denominator_roots().iter().filter(|r| r.norm() < 1.0).count() as i64;
    let (shift, _) = num.as_polynomial();
    Ok(shift + inside - poles)
}

fn sampled_winding(s: &RationalSymbol) -> Result<i64> {
    sampled_winding_of(&|z| s.value_at(z))
}

/// Winding number of a function on the circle by phase unwinding on a
/// uniform grid, refining any interval whose phase increment exceeds an
/// eighth of a turn.
pub fn sampled_winding_of(f: &dyn Fn(c64) -> c64) -> Result<i64> {
    let point = |t: f64| f(c64::from_polar(1.0, t));
    let mut total = 0.0;
    let h = TAU / PHASE_SAMPLES as f64;
    let mut prev = point(0.0);
    for j in 1..=PHASE_SAMPLES {
        let t1 = h * j as f64;
        let next = point(t1);
        total += refined_increment(&point, t1 - h, t1, prev, next, 0)?;
        prev = next;
    }
    let turns = total / TAU;
    let rounded = turns.round();
    if (turns - rounded).abs() > 0.25 {
        return Err(GsioError::WindingMismatch { algebraic: 0, sampled: rounded as i64 });
    }
    Ok(rounded as i64)
}

fn refined_increment(
    point: &dyn Fn(f64) -> c64,
    t0: f64,
    t1: f64,
    v0: c64,
    v1: c64,
    depth: usize,
) -> Result<f64> {
    if v0.norm() == 0.0 || v1.norm() == 0.0 {
        return Err(GsioError::vanishes("symbol", 1.0));
    }
    let step = (v1 / v0).arg();
    if step.abs() <= PI / 4.0 || depth >= 24 {
        return Ok(step);
    }
    let tm = 0.5 * (t0 + t1);
    let vm = point(tm);
    Ok(refined_increment(point, t0, tm, v0, vm, depth + 1)?
        + refined_increment(point, tm, t1, vm, v1, depth + 1)?)
}
