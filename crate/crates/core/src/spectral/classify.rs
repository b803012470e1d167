use crate::fft;
use crate::symbol::{MatrixSymbol, RationalSymbol};

const COEFF_TOL: f64 = 1e-12;

/// Decisions of the boundedness, zero, compactness, self-adjointness,
/// positivity and complex-symmetry criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Flags {
    pub bounded: bool,
    pub zero: bool,
    pub compact: bool,
    pub self_adjoint: bool,
    /// Necessary condition for positivity only.
    pub positive_necessary: bool,
    pub complex_symmetric: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub flags: Flags,
    /// Rank of `R_H` when compact with Laurent entries: `d^-(g) + d^+(phi)`.
    pub finite_rank: Option<usize>,
}

fn is_zero(s: &RationalSymbol) -> bool {
    s.as_laurent().map_or(false, |l| l.terms().all(|(_, c)| c.norm() <= COEFF_TOL))
}

fn equal(a: &RationalSymbol, b: &RationalSymbol) -> bool {
    a.approx_eq(b, COEFF_TOL)
}

fn nonnegative_on_grid(s: &RationalSymbol) -> bool {
    fft::sample(1024, |z| s.value_at(z)).iter().all(|v| v.re >= -COEFF_TOL)
}

pub fn classify(h: &MatrixSymbol) -> Classification {
    let (f, phi, g, psi) = (h.f(), h.phi(), h.g(), h.psi());
    let phi_bar = phi.conj();
    let diag_zero = is_zero(f) && is_zero(psi);
    let zero = diag_zero && g.is_analytic() && phi_bar.is_analytic();
    let self_adjoint = f.is_real_valued(COEFF_TOL) && psi.is_real_valued(COEFF_TOL) && g.sub(&phi_bar).is_analytic();
    let positive_necessary = self_adjoint && nonnegative_on_grid(f) && nonnegative_on_grid(psi);
    let finite_rank = match (diag_zero, g.as_laurent(), phi.as_laurent()) {
        (true, Some(gl), Some(pl)) => Some(gl.neg_degree() + pl.pos_degree()),
        _ => None,
    };
    Classification {
        flags: Flags {
            bounded: true,
            zero,
            compact: diag_zero,
            self_adjoint,
            positive_necessary,
            complex_symmetric: equal(f, psi),
        },
        finite_rank,
    }
}
