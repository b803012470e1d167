use super::{kernel_dims, wh_matrix2, WHFactorization};
use crate::error::{GsioError, Result};
use crate::section::extension_blocks;
use crate::spectral::fredholm_index;
use crate::symbol::{MatrixSymbol, SymbolRole};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Invertible,
    Fredholm,
    NotFredholm,
}

impl VerdictStatus {
    pub fn name(self) -> &'static str {
        match self {
            VerdictStatus::Invertible => "invertible",
            VerdictStatus::Fredholm => "fredholm",
            VerdictStatus::NotFredholm => "not_fredholm",
        }
    }
}

#[derive(Clone, Debug)]
pub struct FredholmVerdict {
    pub status: VerdictStatus,
    pub index: Option<i64>,
    pub dim_ker: u64,
    pub dim_coker: u64,
    pub witness: Option<WHFactorization>,
    /// Set when `status` is `NotFredholm`, e.g. `f_vanishes_on_circle`.
    pub reason: Option<String>,
}

impl FredholmVerdict {
    fn not_fredholm(reason: String) -> Self {
        FredholmVerdict { status: VerdictStatus::NotFredholm, index: None, dim_ker: 0, dim_coker: 0, witness: None, reason: Some(reason) }
    }
}

/// Verdict for `R_H` from the partial indices of `B^-1 A`.
pub fn fredholm_verdict(h: &MatrixSymbol) -> Result<FredholmVerdict> {
    h.require_role(SymbolRole::GsioH)?;
    let expected = match fredholm_index(h) {
        Ok(i) => i,
        Err(GsioError::NotInvertibleOnCircle { what, .. }) => {
            return Ok(FredholmVerdict::not_fredholm(format!("{what}_vanishes_on_circle")))
        }
        Err(e) => return Err(e),
    };
    let blocks = extension_blocks(h)?;
    let w = wh_matrix2(&blocks.binv_a)?;
    let (dim_ker, dim_coker) = kernel_dims(&w.kappa);
    let index = dim_ker as i64 - dim_coker as i64;
    if index != expected {
        return Err(GsioError::InternalInconsistency(format!(
            "partial indices {:?} give index {index}, windings give {expected}",
            w.kappa
        )));
    }
    let status = if w.kappa.iter().all(|&k| k == 0) { VerdictStatus::Invertible } else { VerdictStatus::Fredholm };
    Ok(FredholmVerdict { status, index: Some(index), dim_ker, dim_coker, witness: Some(w), reason: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{LaurentSymbol, RationalSymbol};
    use num_complex::Complex64 as c64;

    #[test]
    fn identity_is_invertible() {
        let v = fredholm_verdict(&MatrixSymbol::gsio(1.0, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(v.status, VerdictStatus::Invertible);
        assert_eq!((v.index, v.dim_ker, v.dim_coker), (Some(0), 0, 0));
    }

    #[test]
    fn shift_is_fredholm() {
        let v = fredholm_verdict(&MatrixSymbol::gsio(RationalSymbol::z_pow(1), 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(v.status, VerdictStatus::Fredholm);
        assert_eq!((v.index, v.dim_ker, v.dim_coker), (Some(-1), 0, 1));
    }

    #[test]
    fn zero_on_circle() {
        let f = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c64::new(1.0, 0.0)), (0, c64::new(-1.0, 0.0))]));
        let v = fredholm_verdict(&MatrixSymbol::gsio(f, 0.0, 0.0, 1.0)).unwrap();
        assert_eq!(v.status, VerdictStatus::NotFredholm);
        assert_eq!(v.reason.as_deref(), Some("f_vanishes_on_circle"));
    }

    #[test]
    fn monomial_grid() {
        for a in -2..=2 {
            for b in -2..=2 {
                let h = MatrixSymbol::gsio(RationalSymbol::z_pow(a), 0.0, 0.0, RationalSymbol::z_pow(b));
                let v = fredholm_verdict(&h).unwrap();
                assert_eq!(v.index, Some(b - a), "a={a} b={b}");
                assert_eq!(v.dim_ker as i64, (-a).max(0) + b.max(0), "a={a} b={b}");
            }
        }
    }
}
