//! Scalar and 2x2 symbols on the unit circle.
//!
//! Symbols are Laurent polynomials or quotients of them with a denominator
//! that does not vanish on the circle. Every value is immutable; arithmetic
//! returns new symbols in canonical form.

mod fourier;
mod laurent;
mod matrix;
pub(crate) mod poly;
mod rational;
mod winding;

pub use fourier::{fourier_coeffs, fourier_coeffs_tol, laurent_approximation};
pub use laurent::LaurentSymbol;
pub use matrix::{MatrixSymbol, SymbolRole};
pub use rational::RationalSymbol;
pub use winding::{sampled_winding_of, winding_number};

use num_complex::Complex64 as c64;

use crate::error::Result;

/// Arithmetic selector mirroring the command-line surface.
#[derive(Clone, Copy, Debug)]
pub enum SymbolOp {
    Add,
    Sub,
    Mul,
    Scale(c64),
    Conj,
    Flip,
}

/// Binary and unary symbol arithmetic; unary operations ignore `b`.
pub fn symbol_arith(a: &RationalSymbol, b: &RationalSymbol, op: SymbolOp) -> RationalSymbol {
    match op {
        SymbolOp::Add => a.add(b),
        SymbolOp::Sub => a.sub(b),
        SymbolOp::Mul => a.mul(b),
        SymbolOp::Scale(lambda) => a.scale(lambda),
        SymbolOp::Conj => a.conj(),
        SymbolOp::Flip => a.flip(),
    }
}

pub fn eval(s: &RationalSymbol, xi: c64) -> Result<c64> {
    s.eval(xi)
}

pub fn invert(s: &RationalSymbol) -> Result<RationalSymbol> {
    s.invert()
}

pub fn riesz_split(s: &LaurentSymbol) -> (LaurentSymbol, LaurentSymbol) {
    s.riesz_split()
}
