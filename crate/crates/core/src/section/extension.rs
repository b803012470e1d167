use num_complex::Complex64 as c64;

use super::assembly::{gsio_section, multiplication_section, CoeffTable};
use super::{l2_grading, FiniteSection, Label};
use crate::error::{GsioError, Result};
use crate::fft;
use crate::symbol::{MatrixSymbol, RationalSymbol, SymbolRole};

/// `A = [[f, 0], [g, -1]]`, `B = [[phi, -1], [psi, 0]]` and `B^-1 A`.
#[derive(Clone, Debug)]
pub struct ExtensionBlocks {
    pub a: MatrixSymbol,
    pub b: MatrixSymbol,
    pub binv_a: MatrixSymbol,
    /// `max |det(B^-1 A) + f/psi|` over 256 grid points.
    pub det_residual: f64,
}

pub fn extension_blocks(h: &MatrixSymbol) -> Result<ExtensionBlocks> {
    h.require_role(SymbolRole::GsioH)?;
    let (f, phi, g, psi) = (h.f(), h.phi(), h.g(), h.psi());
    let zero = RationalSymbol::zero();
    let m1 = RationalSymbol::constant(-1.0);
    let a = MatrixSymbol::new([[f.clone(), zero.clone()], [g.clone(), m1.clone()]], SymbolRole::ExtensionA);
    let b = MatrixSymbol::new([[phi.clone(), m1], [psi.clone(), zero]], SymbolRole::ExtensionB);

    let psi_inv = psi.invert().map_err(|e| match e {
        GsioError::NotInvertibleOnCircle { modulus, .. } => GsioError::vanishes("psi", modulus),
        other => other,
    })?;
    let g_pi = g.mul(&psi_inv);
    let binv_a = MatrixSymbol::new(
        [[g_pi.clone(), psi_inv.neg()], [g_pi.mul(phi).sub(f), phi.mul(&psi_inv).neg()]],
        SymbolRole::QuotientBinvA,
    );

    let det_residual = (0..256)
        .map(|j| {
            let xi = fft::grid_point(j, 256);
            let m = binv_a.value_at(xi);
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            (det + f.value_at(xi) / psi.value_at(xi)).norm()
        })
        .fold(0.0, f64::max);
    Ok(ExtensionBlocks { a, b, binv_a, det_residual })
}

fn pair_grading(n: usize) -> Vec<Label> {
    l2_grading(n, 0).into_iter().chain(l2_grading(n, 1)).collect()
}

/// Max entry difference between
/// `[[P+, P-], [P-, P+]] (A P+ + B P-) [[I, 0], [R_H1, -I]]` and `diag(R_H, I)`,
/// `H1 = [[g, psi], [f, phi]]`, over modes at least `3d` from the boundary.
pub fn extension_identity_residual(h: &MatrixSymbol, n: usize) -> Result<f64> {
    h.require_role(SymbolRole::GsioH)?;
    let d = h
        .laurent_bandwidth()
        .ok_or_else(|| GsioError::InvalidArgument("extension identity needs Laurent entries".into()))?;
    if n <= 6 * d {
        return Err(GsioError::InsufficientOrder { order: n, bandwidth: d });
    }
    let blocks = extension_blocks(h).ok();
    let (a, b) = match &blocks {
        Some(e) => (e.a.clone(), e.b.clone()),
        None => {
            let zero = RationalSymbol::zero();
            let m1 = RationalSymbol::constant(-1.0);
            (
                MatrixSymbol::new([[h.f().clone(), zero.clone()], [h.g().clone(), m1.clone()]], SymbolRole::ExtensionA),
                MatrixSymbol::new([[h.phi().clone(), m1], [h.psi().clone(), zero]], SymbolRole::ExtensionB),
            )
        }
    };
    let table = |m: &MatrixSymbol| -> Result<[[CoeffTable; 2]; 2]> {
        let t = |i, j| CoeffTable::new(m.entry(i, j), n);
        Ok([[t(0, 0)?, t(0, 1)?], [t(1, 0)?, t(1, 1)?]])
    };
    let (ta, tb) = (table(&a)?, table(&b)?);
    let grading = pair_grading(n);
    let ab = multiplication_section(grading.clone(), grading.clone(), n, |rc, _, cc, ca| {
        Some(if ca { &ta[rc][cc] } else { &tb[rc][cc] })
    });

    let g2 = l2_grading(n, 0);
    let p_plus = FiniteSection::projection(g2.clone(), n, true);
    let p_minus = FiniteSection::projection(g2.clone(), n, false);
    let id = FiniteSection::identity(g2.clone(), n);
    let zero = id.scale(c64::new(0.0, 0.0));
    let left = FiniteSection::blocks([[&p_plus, &p_minus], [&p_minus, &p_plus]])?;

    let h1 = MatrixSymbol::gsio(h.g().clone(), h.psi().clone(), h.f().clone(), h.phi().clone());
    let r_h1 = gsio_section(&h1, n)?;
    let right = FiniteSection::blocks([[&id, &zero], [&r_h1, &id.scale(c64::new(-1.0, 0.0))]])?;

    let r_h = gsio_section(h, n)?;
    let target = FiniteSection::blocks([[&r_h, &zero], [&zero, &id]])?;

    let lhs = left.mul(&ab)?.mul(&right)?;
    lhs.interior_max_diff(&target, 3 * d)
}
