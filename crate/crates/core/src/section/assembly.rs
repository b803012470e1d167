use std::collections::BTreeSet;

use num_complex::Complex64 as c64;

use super::{coanalytic_grading, hardy_grading, index_map, interleaved_grading, l2_grading, CsrMatrix, FiniteSection, Label};
use crate::error::{GsioError, Result};
use crate::symbol::{fourier_coeffs, LaurentSymbol, MatrixSymbol, RationalSymbol, SymbolRole};

/// Fourier coefficients of a symbol on the window a section of order `N` can see.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    coeffs: LaurentSymbol,
    bandwidth: usize,
}

impl CoeffTable {
    /// Exact for Laurent symbols; certified on `[-2N, 2N]` otherwise.
    pub fn new(s: &RationalSymbol, n: usize) -> Result<Self> {
        let coeffs = match s.as_laurent() {
            Some(l) => l.clone(),
            None => fourier_coeffs(s, -2 * n as i64, 2 * n as i64)?,
        };
        let bandwidth = coeffs.bandwidth();
        Ok(CoeffTable { coeffs, bandwidth })
    }

    pub fn from_laurent(l: &LaurentSymbol) -> Self {
        CoeffTable { coeffs: l.clone(), bandwidth: l.bandwidth() }
    }

    pub fn coeffs(&self) -> &LaurentSymbol {
        &self.coeffs
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }
}

/// Section of a compressed multiplication operator.
///
/// Entry `(r, c)` is `s^(mode_r - mode_c)` for the table
/// `select(row_component, row_analytic, col_component, col_analytic)`;
/// `None` means a zero block.
pub fn multiplication_section<'a>(
    rows: Vec<Label>,
    cols: Vec<Label>,
    order: usize,
    select: impl Fn(usize, bool, usize, bool) -> Option<&'a CoeffTable>,
) -> FiniteSection {
    let row_index = index_map(&rows);
    let row_components: BTreeSet<usize> = rows.iter().map(|l| l.component).collect();
    let mut triplets = Vec::new();
    let mut margin = 0;
    for (j, lc) in cols.iter().enumerate() {
        for &rc in &row_components {
            for analytic in [true, false] {
                let Some(table) = select(rc, analytic, lc.component, lc.mode >= 0) else { continue };
                margin = margin.max(table.bandwidth);
                for (k, v) in table.coeffs.terms() {
                    let mr = lc.mode + k;
                    if (mr >= 0) != analytic {
                        continue;
                    }
                    if let Some(&i) = row_index.get(&Label::new(rc, mr)) {
                        triplets.push((i, j, v));
                    }
                }
            }
        }
    }
    let data = CsrMatrix::from_triplets(rows.len(), cols.len(), triplets);
    FiniteSection::new(data, rows, cols, order, margin.min(order))
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(GsioError::InvalidArgument("truncation order must be positive".into()));
    }
    Ok(())
}

/// `T_f` on `z^0..z^(N-1)`: entry `(j, k) = f^(j - k)`.
pub fn toeplitz_section(f: &RationalSymbol, n: usize) -> Result<FiniteSection> {
    check_order(n)?;
    let t = CoeffTable::new(f, n)?;
    Ok(multiplication_section(hardy_grading(n, 0), hardy_grading(n, 0), n, |_, ra, _, ca| (ra && ca).then_some(&t)))
}

/// `H_g` from `z^0..z^(N-1)` to `z^-1..z^-N`: entry `(m, k) = g^(-m - k)`.
pub fn hankel_section(g: &RationalSymbol, n: usize) -> Result<FiniteSection> {
    check_order(n)?;
    let t = CoeffTable::new(g, n)?;
    Ok(multiplication_section(coanalytic_grading(n, 0), hardy_grading(n, 0), n, |_, ra, _, ca| {
        (!ra && ca).then_some(&t)
    }))
}

/// Dual Toeplitz `P_- psi P_-` on `z^-1..z^-N`: entry `(m, n) = psi^(n - m)`.
pub fn dual_toeplitz_section(psi: &RationalSymbol, n: usize) -> Result<FiniteSection> {
    check_order(n)?;
    let t = CoeffTable::new(psi, n)?;
    Ok(multiplication_section(coanalytic_grading(n, 0), coanalytic_grading(n, 0), n, |_, ra, _, ca| {
        (!ra && !ca).then_some(&t)
    }))
}

fn gsio_tables(h: &MatrixSymbol, n: usize) -> Result<[CoeffTable; 4]> {
    Ok([
        CoeffTable::new(h.f(), n)?,
        CoeffTable::new(h.phi(), n)?,
        CoeffTable::new(h.g(), n)?,
        CoeffTable::new(h.psi(), n)?,
    ])
}

/// `[[T_f, H*_conj(phi)], [H_g, dual T_psi]]` in the `L^2` grading of order `N`.
pub fn gsio_section(h: &MatrixSymbol, n: usize) -> Result<FiniteSection> {
    h.require_role(SymbolRole::GsioH)?;
    check_order(n)?;
    let [f, phi, g, psi] = gsio_tables(h, n)?;
    let g2 = l2_grading(n, 0);
    Ok(multiplication_section(g2.clone(), g2, n, |_, ra, _, ca| {
        Some(match (ra, ca) {
            (true, true) => &f,
            (true, false) => &phi,
            (false, true) => &g,
            (false, false) => &psi,
        })
    }))
}

fn hardy_pair_label(l: Label) -> Label {
    if l.mode >= 0 {
        Label::new(0, l.mode)
    } else {
        Label::new(1, -l.mode - 1)
    }
}

/// `[[T_f, Gamma_phi~], [Gamma_g, T_psi~]]` on `H^2 + H^2`.
///
/// This is `diag(I, U) R_H diag(I, U)*` with `U z^-m = z^(m-1)`, so it is the
/// `L^2` section with the co-analytic labels moved to the second component.
pub fn hardy_form_section(h: &MatrixSymbol, n: usize) -> Result<FiniteSection> {
    let s = gsio_section(h, n)?;
    let rows = s.rows().iter().map(|&l| hardy_pair_label(l)).collect();
    let cols = s.cols().iter().map(|&l| hardy_pair_label(l)).collect();
    Ok(s.relabel(rows, cols))
}

/// The unitary `U: z^-m -> z^(m-1)` from `z^-1..z^-N` onto the second Hardy component.
pub fn u_matrix(n: usize) -> FiniteSection {
    let one = c64::new(1.0, 0.0);
    let data = CsrMatrix::from_triplets(n, n, (0..n).map(|i| (i, i, one)));
    FiniteSection::new(data, hardy_grading(n, 1), coanalytic_grading(n, 0), n, 0)
}

/// Symbol of `V R_H V`: `[[conj psi, conj g], [conj phi, conj f]]`.
pub fn apply_v_conjugation(h: &MatrixSymbol) -> Result<MatrixSymbol> {
    h.require_role(SymbolRole::GsioH)?;
    Ok(MatrixSymbol::gsio(h.psi().conj(), h.g().conj(), h.phi().conj(), h.f().conj()))
}

/// Matrix of `V S V` for a section `S` on a grading closed under `z^n <-> z^(-n-1)`.
pub fn v_basis_map(s: &FiniteSection) -> Result<FiniteSection> {
    let sigma = |l: &Label| Label::new(l.component, -l.mode - 1);
    let ri = index_map(s.rows());
    let ci = index_map(s.cols());
    let lookup = |map: &std::collections::HashMap<Label, usize>, l: &Label| {
        map.get(&sigma(l))
            .copied()
            .ok_or_else(|| GsioError::InvalidArgument("grading is not closed under V".into()))
    };
    let pr = s.rows().iter().map(|l| lookup(&ri, l)).collect::<Result<Vec<_>>>()?;
    let pc = s.cols().iter().map(|l| lookup(&ci, l)).collect::<Result<Vec<_>>>()?;
    let data = s.data().conj().permute(&pr, &pc);
    Ok(FiniteSection::new(data, s.rows().to_vec(), s.cols().to_vec(), s.order(), s.interior_margin()))
}

/// `[[T_zbar, Gamma_phi~], [0, T_z]]` on `H^2 + H^2`.
pub fn foguel_hankel_section(phi: &RationalSymbol, n: usize) -> Result<FiniteSection> {
    let zbar = RationalSymbol::z_pow(-1);
    let h = MatrixSymbol::gsio(zbar.clone(), phi.clone(), RationalSymbol::zero(), zbar);
    hardy_form_section(&h, n)
}

/// `[[f, u conj f], [u f, f]]` for a monomial inner `u = z^k`, `k >= 1`.
pub fn dtt_symbol(u: &LaurentSymbol, f: &RationalSymbol) -> Result<MatrixSymbol> {
    match u.as_monomial() {
        Some((k, c)) if k >= 1 && c == c64::new(1.0, 0.0) => {
            let u = RationalSymbol::z_pow(k);
            Ok(MatrixSymbol::gsio(f.clone(), u.mul(&f.conj()), u.mul(f), f.clone()))
        }
        _ => Err(GsioError::NotMonomialInner),
    }
}

fn block_tables(f: &MatrixSymbol, n: usize) -> Result<[[CoeffTable; 2]; 2]> {
    let t = |i, j| CoeffTable::new(f.entry(i, j), n);
    Ok([[t(0, 0)?, t(0, 1)?], [t(1, 0)?, t(1, 1)?]])
}

/// `T_F` on `H^2 + H^2` in interleaved grading: block `(j, k)` is `F^(j - k)`.
pub fn block_toeplitz_section(f: &MatrixSymbol, n: usize) -> Result<FiniteSection> {
    block_toeplitz_tall(f, n, n)
}

/// `rows x n` modes of `T_F` (`rows >= n`); the extra rows keep the full image
/// of the first `n` modes when `rows - n` covers the analytic bandwidth of `F`.
pub fn block_toeplitz_tall(f: &MatrixSymbol, n: usize, rows: usize) -> Result<FiniteSection> {
    check_order(n)?;
    let tables = block_tables(f, rows.max(n))?;
    Ok(multiplication_section(interleaved_grading(rows), interleaved_grading(n), n, |rc, ra, cc, ca| {
        (ra && ca).then_some(&tables[rc][cc])
    }))
}
