use num_complex::Complex64 as c64;

use super::{Factors, WHFactorization, RESIDUAL_TOL};
use crate::error::{GsioError, Result};
use crate::fft;
use crate::symbol::{winding_number, LaurentSymbol, RationalSymbol};

/// `prod (1 - r zbar)` over `roots`.
fn minus_product(roots: &[c64]) -> LaurentSymbol {
    roots.iter().fold(LaurentSymbol::one(), |acc, &r| {
        &acc * &LaurentSymbol::from_pairs([(0, c64::new(1.0, 0.0)), (-1, -r)])
    })
}

/// `prod (z - r)` over `roots`.
fn plus_product(roots: &[c64]) -> LaurentSymbol {
    roots.iter().fold(LaurentSymbol::one(), |acc, &r| {
        &acc * &LaurentSymbol::from_pairs([(1, c64::new(1.0, 0.0)), (0, -r)])
    })
}

fn split(roots: &[c64]) -> (Vec<c64>, Vec<c64>) {
    roots.iter().partition(|r| r.norm() < 1.0)
}

/// `s = s_- z^kappa s_+` from the root locations of numerator and denominator;
/// `s_-(inf) = 1`.
pub fn wh_scalar(s: &RationalSymbol) -> Result<WHFactorization> {
    let kappa = winding_number(s)?;
    let (shift, num_poly) = s.numerator().as_polynomial();
    let (_, den_poly) = s.denominator().as_polynomial();
    let num_lead = *num_poly.last().unwrap();
    let den_lead = *den_poly.last().unwrap();
    let (num_in, num_out) = split(&s.numerator_roots()?);
    let (den_in, den_out) = split(s.denominator_roots());

    let algebraic = shift + num_in.len() as i64 - den_in.len() as i64;
    if algebraic != kappa {
        return Err(GsioError::RootSplitFailure(format!("root count gives index {algebraic}, winding {kappa}")));
    }
    let minus = RationalSymbol::new(minus_product(&num_in), minus_product(&den_in))?;
    let plus = RationalSymbol::new(plus_product(&num_out).scale(num_lead), plus_product(&den_out).scale(den_lead))?;

    let d = RationalSymbol::z_pow(kappa);
    let residual = (0..512)
        .map(|j| {
            let xi = fft::grid_point(j, 512);
            (s.value_at(xi) - minus.value_at(xi) * d.value_at(xi) * plus.value_at(xi)).norm()
        })
        .fold(0.0, f64::max);
    if !(residual <= RESIDUAL_TOL) {
        return Err(GsioError::RootSplitFailure(format!("reconstruction residual {residual:e}")));
    }
    Ok(WHFactorization {
        factors: Factors::Scalar { minus, plus },
        kappa: vec![kappa],
        reconstruction_residual: residual,
        normalized: true,
        bandwidth: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    fn laurent(s: &RationalSymbol) -> LaurentSymbol {
        s.as_laurent().expect("Laurent factor").clone()
    }

    #[test]
    fn monomial() {
        let w = wh_scalar(&RationalSymbol::z_pow(3)).unwrap();
        assert_eq!(w.kappa, vec![3]);
        let Factors::Scalar { minus, plus } = &w.factors else { panic!() };
        assert_eq!(laurent(minus), LaurentSymbol::one());
        assert_eq!(laurent(plus), LaurentSymbol::one());
    }

    #[test]
    fn outside_root_is_plus() {
        let s = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(0, c(2.0)), (1, c(-1.0))]));
        let w = wh_scalar(&s).unwrap();
        assert_eq!(w.kappa, vec![0]);
        let Factors::Scalar { minus, plus } = &w.factors else { panic!() };
        assert_eq!(laurent(minus), LaurentSymbol::one());
        assert!(laurent(plus).max_abs_diff(s.as_laurent().unwrap()) < 1e-15);
    }

    #[test]
    fn inside_root_is_minus() {
        let s = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (0, c(-0.5))]));
        let w = wh_scalar(&s).unwrap();
        assert_eq!(w.kappa, vec![1]);
        let Factors::Scalar { minus, plus } = &w.factors else { panic!() };
        let want = LaurentSymbol::from_pairs([(0, c(1.0)), (-1, c(-0.5))]);
        assert!(laurent(minus).max_abs_diff(&want) < 1e-15);
        assert_eq!(laurent(plus), LaurentSymbol::one());
    }

    #[test]
    fn rational_mixed() {
        // (z - 1/3)(z - 3) / ((z - 1/2)(z + 4))
        let num = LaurentSymbol::from_pairs([(2, c(1.0)), (1, c(-10.0 / 3.0)), (0, c(1.0))]);
        let den = LaurentSymbol::from_pairs([(2, c(1.0)), (1, c(3.5)), (0, c(-2.0))]);
        let s = RationalSymbol::new(num, den).unwrap();
        let w = wh_scalar(&s).unwrap();
        assert_eq!(w.kappa, vec![0]);
        assert!(w.reconstruction_residual < 1e-12);
        let Factors::Scalar { minus, plus } = &w.factors else { panic!() };
        assert!(plus.is_analytic());
        assert!(minus.flip().is_analytic());
    }

    #[test]
    fn zero_on_circle() {
        let s = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (0, c(-1.0))]));
        assert!(matches!(wh_scalar(&s), Err(GsioError::NotInvertibleOnCircle { .. })));
    }
}
