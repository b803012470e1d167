//! Dense polynomials in ascending coefficient order and their roots.

use faer::Mat;
use num_complex::Complex64 as c64;

use crate::error::{GsioError, Result};

pub(crate) fn eval(p: &[c64], z: c64) -> c64 {
    p.iter().rev().fold(c64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn eval_with_derivative(p: &[c64], z: c64) -> (c64, c64) {
    let mut val = c64::new(0.0, 0.0);
    let mut der = c64::new(0.0, 0.0);
    for &c in p.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

/// Divides `p` by `(z - r)`, discarding the remainder.
pub(crate) fn deflate(p: &[c64], r: c64) -> Vec<c64> {
    let n = p.len();
    if n <= 1 {
        return vec![];
    }
    let mut q = vec![c64::new(0.0, 0.0); n - 1];
    let mut carry = p[n - 1];
    q[n - 2] = carry;
    for k in (1..n - 1).rev() {
        carry = p[k] + carry * r;
        q[k - 1] = carry;
    }
    q
}

/// All roots of `p` (ascending coefficients, nonzero leading term), with multiplicity.
///
/// Companion-matrix eigenvalues followed by Newton polishing against the
/// original coefficients.
pub(crate) fn roots(p: &[c64]) -> Result<Vec<c64>> {
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Ok(vec![]);
    }
    let lead = p[n];
    if lead.norm() == 0.0 {
        return Err(GsioError::InvalidArgument(
            "polynomial has a zero leading coefficient".into(),
        ));
    }
    if n == 1 {
        return Ok(vec![-p[0] / p[1]]);
    }
    if n == 2 {
        let (a, b, c) = (p[2], p[1], p[0]);
        let disc = (b * b - 4.0 * a * c).sqrt();
        // pick the sign that avoids cancellation
        let q = if (b.conj() * disc).re >= 0.0 { -0.5 * (b + disc) } else { -0.5 * (b - disc) };
        if q.norm() == 0.0 {
            return Ok(vec![c64::new(0.0, 0.0); 2]);
        }
        return Ok(vec![q / a, c / q]);
    }

    let companion = Mat::<c64>::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -p[i] / lead
        } else if i == j + 1 {
            c64::new(1.0, 0.0)
        } else {
            c64::new(0.0, 0.0)
        }
    });
    let mut found = companion
        .eigenvalues()
        .map_err(|e| GsioError::RootSplitFailure(format!("companion eigenvalues: {e:?}")))?;

    for r in found.iter_mut() {
        for _ in 0..4 {
            let (v, d) = eval_with_derivative(p, *r);
            if d.norm() == 0.0 {
                break;
            }
            let next = *r - v / d;
            if !next.re.is_finite() || !next.im.is_finite() {
                break;
            }
            if eval(p, next).norm() < v.norm() {
                *r = next;
            } else {
                break;
            }
        }
    }
    Ok(found)
}

pub(crate) fn from_roots(roots: &[c64], scale: c64) -> Vec<c64> {
    let mut p = vec![scale];
    for &r in roots {
        let mut next = vec![c64::new(0.0, 0.0); p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        p = next;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> c64 {
        c64::new(re, im)
    }

    #[test]
    fn roots_of_product_are_recovered() {
        let want = [c(0.5, 0.0), c(-2.0, 1.0), c(0.0, 3.0), c(0.3, -0.4)];
        let p = from_roots(&want, c(2.0, -1.0));
        let mut got = roots(&p).unwrap();
        for w in want {
            let (idx, _) = got
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - w).norm().partial_cmp(&(b.1 - w).norm()).unwrap())
                .unwrap();
            assert!((got[idx] - w).norm() < 1e-10, "{:?} vs {:?}", got[idx], w);
            got.remove(idx);
        }
    }

    #[test]
    fn quadratic_without_cancellation() {
        // z^2 - 1e8 z + 1: roots 1e8 and 1e-8
        let p = [c(1.0, 0.0), c(-1e8, 0.0), c(1.0, 0.0)];
        let mut r = roots(&p).unwrap();
        r.sort_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
        assert!((r[0].re - 1e-8).abs() < 1e-20);
        assert!((r[1].re - 1e8).abs() < 1e-4);
    }

    #[test]
    fn deflation_removes_root() {
        let p = from_roots(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], c(1.0, 0.0));
        let q = deflate(&p, c(2.0, 0.0));
        let expect = from_roots(&[c(1.0, 0.0), c(3.0, 0.0)], c(1.0, 0.0));
        for (a, b) in q.iter().zip(expect.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
