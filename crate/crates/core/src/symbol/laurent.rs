use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64 as c64;

use crate::tol;

/// A Laurent polynomial `sum_k c_k z^k` with finitely many nonzero modes.
///
/// Stored canonically: coefficients below [`tol::TRIM`] are zeroed and the
/// support is tight, so `coeffs[0]` and the last coefficient are nonzero
/// unless the symbol is identically zero.
#[derive(Clone, PartialEq)]
pub struct LaurentSymbol {
    low: i64,
    coeffs: Vec<c64>,
}

impl LaurentSymbol {
    pub fn zero() -> Self {
        LaurentSymbol { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<c64>) -> Self {
        Self::from_coeffs(0, vec![c.into()])
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// `c * z^k`
    pub fn monomial(k: i64, c: impl Into<c64>) -> Self {
        Self::from_coeffs(k, vec![c.into()])
    }

    /// `z^k`
    pub fn z_pow(k: i64) -> Self {
        Self::monomial(k, 1.0)
    }

    /// Coefficients `coeffs[i]` of mode `low + i`.
    pub fn from_coeffs(low: i64, coeffs: Vec<c64>) -> Self {
        let mut s = LaurentSymbol { low, coeffs };
        s.canonicalize();
        s
    }

    /// Builds from `(mode, coefficient)` pairs; repeated modes are summed.
    pub fn from_pairs<I: IntoIterator<Item = (i64, c64)>>(pairs: I) -> Self {
        let pairs: Vec<(i64, c64)> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Self::zero();
        }
        let lo = pairs.iter().map(|p| p.0).min().unwrap();
        let hi = pairs.iter().map(|p| p.0).max().unwrap();
        let mut coeffs = vec![c64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for (k, c) in pairs {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    fn canonicalize(&mut self) {
        for c in self.coeffs.iter_mut() {
            if c.norm() < tol::TRIM {
                *c = c64::new(0.0, 0.0);
            }
        }
        let first = self.coeffs.iter().position(|c| c.norm() != 0.0);
        match first {
            None => {
                self.low = 0;
                self.coeffs.clear();
            }
            Some(first) => {
                let last = self.coeffs.iter().rposition(|c| c.norm() != 0.0).unwrap();
                self.coeffs.truncate(last + 1);
                self.coeffs.drain(..first);
                self.low += first as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> c64 {
        let idx = k - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            c64::new(0.0, 0.0)
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn min_mode(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_mode(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Number of co-analytic modes reached: `max(0, -min_mode)`.
    pub fn neg_degree(&self) -> usize {
        self.min_mode().map_or(0, |m| (-m).max(0) as usize)
    }

    /// `max(0, max_mode)`.
    pub fn pos_degree(&self) -> usize {
        self.max_mode().map_or(0, |m| m.max(0) as usize)
    }

    pub fn bandwidth(&self) -> usize {
        self.neg_degree().max(self.pos_degree())
    }

    /// Nonzero `(mode, coefficient)` pairs in increasing mode order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, c64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != 0.0)
            .map(move |(i, &c)| (self.low + i as i64, c))
    }

    /// `(m, p)` with `s(z) = z^m p(z)` and `p(0) != 0`.
    pub fn as_polynomial(&self) -> (i64, &[c64]) {
        (self.low, &self.coeffs)
    }

    pub fn as_monomial(&self) -> Option<(i64, c64)> {
        (self.coeffs.len() == 1).then(|| (self.low, self.coeffs[0]))
    }

    /// Evaluates at any nonzero complex point.
    pub fn value_at(&self, z: c64) -> c64 {
        if self.is_zero() {
            return c64::new(0.0, 0.0);
        }
        let p = super::poly::eval(&self.coeffs, z);
        p * z.powi(self.low as i32)
    }

    pub fn scale(&self, lambda: c64) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|&c| c * lambda).collect())
    }

    /// `s(z) -> conj(s(z))` on the circle: `c_k -> conj(c_{-k})`.
    pub fn conj(&self) -> Self {
        let Some(hi) = self.max_mode() else { return Self::zero() };
        Self::from_coeffs(-hi, self.coeffs.iter().rev().map(|c| c.conj()).collect())
    }

    /// `s(z) -> s(conj z)` on the circle: `c_k -> c_{-k}`.
    pub fn flip(&self) -> Self {
        let Some(hi) = self.max_mode() else { return Self::zero() };
        Self::from_coeffs(-hi, self.coeffs.iter().rev().copied().collect())
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentSymbol { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Riesz splitting into the analytic part (modes `>= 0`) and the rest.
    pub fn riesz_split(&self) -> (LaurentSymbol, LaurentSymbol) {
        let plus = LaurentSymbol::from_pairs(self.terms().filter(|t| t.0 >= 0));
        let minus = LaurentSymbol::from_pairs(self.terms().filter(|t| t.0 < 0));
        (plus, minus)
    }

    /// No negative modes.
    pub fn is_analytic(&self) -> bool {
        self.min_mode().is_none_or(|m| m >= 0)
    }

    /// Real-valued on the circle: `c_k = conj(c_{-k})` within `tol`.
    pub fn is_real_valued(&self, tol: f64) -> bool {
        self.max_abs_diff(&self.conj()) <= tol
    }

    pub fn max_abs_diff(&self, other: &LaurentSymbol) -> f64 {
        let lo = self.min_mode().unwrap_or(0).min(other.min_mode().unwrap_or(0));
        let hi = self.max_mode().unwrap_or(0).max(other.max_mode().unwrap_or(0));
        (lo..=hi).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}

impl Default for LaurentSymbol {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for LaurentSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({}{:+}i)z^{}", c.re, c.im, k)?;
        }
        Ok(())
    }
}

impl From<c64> for LaurentSymbol {
    fn from(c: c64) -> Self {
        Self::constant(c)
    }
}

impl From<f64> for LaurentSymbol {
    fn from(c: f64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn add(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.max_mode().unwrap().max(rhs.max_mode().unwrap());
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        LaurentSymbol::from_coeffs(lo, coeffs)
    }
}

impl Sub for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn sub(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn neg(self) -> LaurentSymbol {
        self.scale(c64::new(-1.0, 0.0))
    }
}

impl Mul for &LaurentSymbol {
    type Output = LaurentSymbol;
    fn mul(self, rhs: &LaurentSymbol) -> LaurentSymbol {
        if self.is_zero() || rhs.is_zero() {
            return LaurentSymbol::zero();
        }
        let mut out = vec![c64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentSymbol::from_coeffs(self.low + rhs.low, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentSymbol {
            type Output = LaurentSymbol;
            fn $m(self, rhs: LaurentSymbol) -> LaurentSymbol {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentSymbol {
    type Output = LaurentSymbol;
    fn neg(self) -> LaurentSymbol {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> c64 {
        c64::new(re, 0.0)
    }

    #[test]
    fn canonical_form_is_tight() {
        let s = LaurentSymbol::from_coeffs(-3, vec![c(0.0), c(1e-16), c(2.0), c(0.0), c(1.0), c(0.0)]);
        assert_eq!(s.min_mode(), Some(-1));
        assert_eq!(s.max_mode(), Some(1));
        assert_eq!(s.coeff(0), c(0.0));
        assert!(LaurentSymbol::from_coeffs(4, vec![c(0.0); 3]).is_zero());
    }

    #[test]
    fn conj_and_flip() {
        let z = LaurentSymbol::z_pow(1);
        assert_eq!(z.conj(), LaurentSymbol::z_pow(-1));
        // flip(z^2 + 2 zbar) = zbar^2 + 2z
        let s = LaurentSymbol::from_pairs([(2, c(1.0)), (-1, c(2.0))]);
        let want = LaurentSymbol::from_pairs([(-2, c(1.0)), (1, c(2.0))]);
        assert_eq!(s.flip(), want);
        let w = LaurentSymbol::from_pairs([(1, c64::new(0.0, 1.0))]);
        assert_eq!(w.conj(), LaurentSymbol::from_pairs([(-1, c64::new(0.0, -1.0))]));
    }

    #[test]
    fn product_matches_convolution() {
        // (z + 1)(zbar + 1) = z + zbar + 2
        let a = LaurentSymbol::from_pairs([(1, c(1.0)), (0, c(1.0))]);
        let b = LaurentSymbol::from_pairs([(-1, c(1.0)), (0, c(1.0))]);
        let want = LaurentSymbol::from_pairs([(1, c(1.0)), (-1, c(1.0)), (0, c(2.0))]);
        assert_eq!(&a * &b, want);
    }

    #[test]
    fn riesz_split_examples() {
        let s = LaurentSymbol::from_pairs([(2, c(1.0)), (0, c(3.0)), (-1, c(1.0))]);
        let (p, m) = s.riesz_split();
        assert_eq!(p, LaurentSymbol::from_pairs([(2, c(1.0)), (0, c(3.0))]));
        assert_eq!(m, LaurentSymbol::z_pow(-1));

        let (p, m) = LaurentSymbol::z_pow(-3).riesz_split();
        assert!(p.is_zero());
        assert_eq!(m, LaurentSymbol::z_pow(-3));

        let (p, m) = LaurentSymbol::zero().riesz_split();
        assert!(p.is_zero() && m.is_zero());
    }

    #[test]
    fn evaluation_on_circle() {
        let s = LaurentSymbol::from_pairs([(1, c(1.0)), (0, c(2.0))]);
        assert!((s.value_at(c(1.0)) - c(3.0)).norm() < 1e-15);
        let zbar = LaurentSymbol::z_pow(-1);
        assert!((zbar.value_at(c64::new(0.0, 1.0)) - c64::new(0.0, -1.0)).norm() < 1e-15);
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentSymbol> {
        (-4i64..=4, prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 0..7)).prop_map(
            |(low, cs)| LaurentSymbol::from_coeffs(low, cs.into_iter().map(|(a, b)| c64::new(a, b)).collect()),
        )
    }

    proptest! {
        #[test]
        fn riesz_split_is_complementary(s in arb_laurent()) {
            let (p, m) = s.riesz_split();
            prop_assert_eq!(&p + &m, s.clone());
            prop_assert!(p.is_analytic());
            prop_assert!(m.riesz_split().0.is_zero());
            prop_assert_eq!(p.riesz_split().0, p.clone());
        }

        #[test]
        fn product_coefficients_are_convolution(a in arb_laurent(), b in arb_laurent()) {
            let prod = &a * &b;
            for k in -20i64..=20 {
                let conv: c64 = (-12i64..=12).map(|j| a.coeff(j) * b.coeff(k - j)).sum();
                prop_assert!((prod.coeff(k) - conv).norm() < 1e-12);
            }
        }
    }
}
