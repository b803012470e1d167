use std::fmt;

use num_complex::Complex64 as c64;

use super::laurent::LaurentSymbol;
use super::poly;
use crate::error::{GsioError, Result};
use crate::tol;

/// Quotient of Laurent polynomials whose denominator has no zeros on the circle.
///
/// The denominator is kept as an ordinary polynomial `q(z)` with `q(0) = 1`;
/// any monomial factor lives in the numerator.
#[derive(Clone)]
pub struct RationalSymbol {
    num: LaurentSymbol,
    den: LaurentSymbol,
    den_roots: Vec<c64>,
    certified_min_modulus: f64,
}

/// Lower bound of `|c * prod (z - r_i)|` on the unit circle.
fn modulus_lower_bound(lead: c64, roots: &[c64]) -> f64 {
    roots.iter().fold(lead.norm(), |acc, r| acc * (1.0 - r.norm()).abs())
}

fn closest_to_circle(roots: &[c64]) -> Option<c64> {
    roots
        .iter()
        .copied()
        .min_by(|a, b| (a.norm() - 1.0).abs().partial_cmp(&(b.norm() - 1.0).abs()).unwrap())
}

/// Roots of the polynomial part of a Laurent symbol (monomial factor excluded).
pub(crate) fn laurent_roots(s: &LaurentSymbol) -> Result<Vec<c64>> {
    let (_, p) = s.as_polynomial();
    poly::roots(p)
}

pub(crate) fn on_circle(r: c64) -> bool {
    (r.norm() - 1.0).abs() <= tol::RHO_TOL
}

impl RationalSymbol {
    pub fn from_laurent(s: LaurentSymbol) -> Self {
        RationalSymbol {
            num: s,
            den: LaurentSymbol::one(),
            den_roots: Vec::new(),
            certified_min_modulus: 1.0,
        }
    }

    /// Builds `num / den`, certifying that `den` has no root within
    /// [`tol::RHO_TOL`] of the circle and cancelling common roots.
    pub fn new(num: LaurentSymbol, den: LaurentSymbol) -> Result<Self> {
        if den.is_zero() {
            return Err(GsioError::InvalidArgument("zero denominator".into()));
        }
        let shift = den.min_mode().unwrap();
        let num = num.shift(-shift);
        let den = den.shift(-shift);
        let roots = laurent_roots(&den)?;
        if let Some(r) = closest_to_circle(&roots) {
            if on_circle(r) {
                return Err(GsioError::vanishes("denominator", r.norm()));
            }
        }
        Ok(Self::assemble(num, den, roots))
    }

    /// Final normalization given a validated denominator and its roots.
    fn assemble(num: LaurentSymbol, den: LaurentSymbol, den_roots: Vec<c64>) -> Self {
        let (num, den, den_roots) = cancel_common_roots(num, den, den_roots);
        let c0 = den.coeff(0);
        let num = num.scale(c0.inv());
        let den = den.scale(c0.inv());
        let lead = den.coeff(den.max_mode().unwrap_or(0));
        let certified_min_modulus = modulus_lower_bound(lead, &den_roots);
        RationalSymbol { num, den, den_roots, certified_min_modulus }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentSymbol::zero())
    }

    pub fn constant(c: impl Into<c64>) -> Self {
        Self::from_laurent(LaurentSymbol::constant(c))
    }

    pub fn z_pow(k: i64) -> Self {
        Self::from_laurent(LaurentSymbol::z_pow(k))
    }

    pub fn numerator(&self) -> &LaurentSymbol {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentSymbol {
        &self.den
    }

    pub fn denominator_roots(&self) -> &[c64] {
        &self.den_roots
    }

    pub fn certified_min_modulus(&self) -> f64 {
        self.certified_min_modulus
    }

    pub fn is_laurent(&self) -> bool {
        self.den_roots.is_empty()
    }

    pub fn as_laurent(&self) -> Option<&LaurentSymbol> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Roots of the numerator's polynomial part.
    pub fn numerator_roots(&self) -> Result<Vec<c64>> {
        laurent_roots(&self.num)
    }

    /// Geometric decay rate of the Fourier coefficients: the largest of
    /// `|r|` (inside roots) and `1/|r|` (outside roots) over denominator roots.
    pub fn decay_rate(&self) -> f64 {
        self.den_roots
            .iter()
            .map(|r| if r.norm() < 1.0 { r.norm() } else { 1.0 / r.norm() })
            .fold(0.0, f64::max)
    }

    /// Largest multiplicity among denominator roots that share the worst decay rate.
    pub(crate) fn worst_pole_multiplicity(&self) -> usize {
        let rate = self.decay_rate();
        self.den_roots
            .iter()
            .filter(|r| {
                let q = if r.norm() < 1.0 { r.norm() } else { 1.0 / r.norm() };
                (q - rate).abs() < 1e-6
            })
            .count()
            .max(1)
    }

    /// Unchecked evaluation at any point off the poles.
    pub fn value_at(&self, z: c64) -> c64 {
        if self.is_laurent() {
            return self.num.value_at(z);
        }
        self.num.value_at(z) / self.den.value_at(z)
    }

    /// Evaluation at a point of the unit circle.
    pub fn eval(&self, xi: c64) -> Result<c64> {
        let deviation = xi.norm() - 1.0;
        if deviation.abs() > tol::UNIMODULAR {
            return Err(GsioError::NonUnimodularPoint { re: xi.re, im: xi.im, deviation });
        }
        Ok(self.value_at(xi))
    }

    pub fn scale(&self, lambda: c64) -> Self {
        RationalSymbol {
            num: self.num.scale(lambda),
            den: self.den.clone(),
            den_roots: self.den_roots.clone(),
            certified_min_modulus: self.certified_min_modulus,
        }
    }

    pub fn add(&self, other: &RationalSymbol) -> Self {
        if self.den == other.den {
            return Self::assemble(&self.num + &other.num, self.den.clone(), self.den_roots.clone());
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        let roots = [self.den_roots.as_slice(), other.den_roots.as_slice()].concat();
        Self::assemble(num, den, roots)
    }

    pub fn sub(&self, other: &RationalSymbol) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(c64::new(-1.0, 0.0))
    }

    pub fn mul(&self, other: &RationalSymbol) -> Self {
        if self.is_laurent() && other.is_laurent() {
            return Self::from_laurent(&self.num * &other.num);
        }
        let num = &self.num * &other.num;
        let den = &self.den * &other.den;
        let roots = [self.den_roots.as_slice(), other.den_roots.as_slice()].concat();
        Self::assemble(num, den, roots)
    }

    /// Pointwise conjugate on the circle.
    pub fn conj(&self) -> Self {
        self.reflect(LaurentSymbol::conj, |r| r.conj().inv())
    }

    /// `s(z) -> s(conj z)` on the circle.
    pub fn flip(&self) -> Self {
        self.reflect(LaurentSymbol::flip, |r| r.inv())
    }

    // Both maps send the polynomial q(z) to a Laurent polynomial in zbar whose
    // roots are the images of the original roots under `root_map`.
    fn reflect(&self, map: fn(&LaurentSymbol) -> LaurentSymbol, root_map: fn(c64) -> c64) -> Self {
        if self.is_laurent() {
            return Self::from_laurent(map(&self.num));
        }
        let num = map(&self.num);
        let den = map(&self.den);
        let shift = den.min_mode().unwrap();
        let roots = self.den_roots.iter().map(|&r| root_map(r)).collect();
        Self::assemble(num.shift(-shift), den.shift(-shift), roots)
    }

    /// `1 / s`, certified to have no poles on the circle.
    pub fn invert(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(GsioError::vanishes("symbol", 0.0));
        }
        let roots = self.numerator_roots()?;
        if let Some(r) = closest_to_circle(&roots) {
            if on_circle(r) {
                return Err(GsioError::vanishes("symbol", r.norm()));
            }
        }
        let shift = self.num.min_mode().unwrap();
        Ok(Self::assemble(self.den.shift(-shift), self.num.shift(-shift), roots))
    }

    /// Coefficientwise comparison of cross products `a.num b.den - b.num a.den`.
    pub fn approx_eq(&self, other: &RationalSymbol, tol: f64) -> bool {
        let lhs = &self.num * &other.den;
        let rhs = &other.num * &self.den;
        lhs.max_abs_diff(&rhs) <= tol
    }

    /// Real-valued on the circle.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.approx_eq(&self.conj(), tol)
    }

    /// Membership in `H^2`: no negative Fourier modes.
    pub fn is_analytic(&self) -> bool {
        if self.num.is_zero() {
            return true;
        }
        self.num.min_mode().unwrap() >= 0 && self.den_roots.iter().all(|r| r.norm() > 1.0)
    }
}

fn cancel_common_roots(
    num: LaurentSymbol,
    den: LaurentSymbol,
    mut den_roots: Vec<c64>,
) -> (LaurentSymbol, LaurentSymbol, Vec<c64>) {
    if den_roots.is_empty() || num.is_zero() {
        if num.is_zero() {
            return (num, LaurentSymbol::one(), Vec::new());
        }
        return (num, den, den_roots);
    }
    let (shift, p) = num.as_polynomial();
    let Ok(mut num_roots) = poly::roots(p) else {
        return (num, den, den_roots);
    };
    let mut p = p.to_vec();
    let (_, q) = den.as_polynomial();
    let mut q = q.to_vec();
    let mut changed = false;
    let mut i = 0;
    while i < den_roots.len() {
        let r = den_roots[i];
        let hit = num_roots
            .iter()
            .position(|&a| (a - r).norm() <= tol::RHO_TOL * r.norm().max(1.0));
        if let Some(j) = hit {
            p = poly::deflate(&p, num_roots[j]);
            q = poly::deflate(&q, r);
            num_roots.swap_remove(j);
            den_roots.swap_remove(i);
            changed = true;
        } else {
            i += 1;
        }
    }
    if !changed {
        return (num, den, den_roots);
    }
    let num = LaurentSymbol::from_coeffs(shift, p);
    let den = LaurentSymbol::from_coeffs(0, q);
    if den_roots.is_empty() {
        let c = den.coeff(0);
        return (num.scale(c.inv()), LaurentSymbol::one(), den_roots);
    }
    (num, den, den_roots)
}

impl From<f64> for RationalSymbol {
    fn from(c: f64) -> Self {
        RationalSymbol::constant(c)
    }
}

impl From<c64> for RationalSymbol {
    fn from(c: c64) -> Self {
        RationalSymbol::constant(c)
    }
}

impl From<LaurentSymbol> for RationalSymbol {
    fn from(s: LaurentSymbol) -> Self {
        Self::from_laurent(s)
    }
}

impl fmt::Debug for RationalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "[{:?}] / [{:?}]", self.num, self.den)
        }
    }
}
