use num_complex::Complex64 as c64;
use rayon::prelude::*;

use crate::error::{GsioError, Result};
use crate::fft;
use crate::section::{CoeffTable, FiniteSection};
use crate::symbol::{MatrixSymbol, RationalSymbol, SymbolRole};

const KERNEL_TAIL: f64 = 1e-12;

/// Smallest `N` with `r^(2N) <= 1e-12`.
pub fn kernel_order(r: f64) -> Result<usize> {
    if !(r > 0.0 && r < 1.0) {
        return Err(GsioError::InvalidArgument(format!("radius {r} outside (0, 1)")));
    }
    Ok((KERNEL_TAIL.ln() / (2.0 * r.ln())).ceil().max(1.0) as usize)
}

fn check_tail(r: f64, available: usize) -> Result<()> {
    let required = kernel_order(r)?;
    if available < required {
        return Err(GsioError::OrderTooSmall { radius: r, required, available });
    }
    Ok(())
}

/// `<T k, k>` for the Toeplitz-type block with table `t` and the truncated
/// kernel `sqrt(1-r^2) (r conj xi)^n`, `n < N`, evaluated as a band sum.
fn poisson_band(t: &CoeffTable, r: f64, xi: c64, n: usize) -> c64 {
    t.coeffs()
        .terms()
        .filter(|(k, _)| k.unsigned_abs() < n as u64)
        .map(|(k, c)| {
            let a = k.unsigned_abs() as i32;
            let weight = r.powi(a) * (1.0 - r.powi(2 * (n as i32 - a)));
            c * xi.powi(k as i32) * weight
        })
        .sum()
}

/// `(<R_H k, k>, <R_H zbar conj k, zbar conj k>)` at `z = r xi` with kernels
/// truncated to `N` modes.
pub fn berezin_pair(h: &MatrixSymbol, r: f64, xi: c64, n: usize) -> Result<(c64, c64)> {
    h.require_role(SymbolRole::GsioH)?;
    check_tail(r, n)?;
    let f = CoeffTable::new(h.f(), n)?;
    let psi = CoeffTable::new(h.psi(), n)?;
    Ok((poisson_band(&f, r, xi, n), poisson_band(&psi, r, xi, n)))
}

/// Analytic kernel and its co-analytic mirror on the grading of `s`.
fn kernel_vectors(s: &FiniteSection, r: f64, xi: c64) -> (Vec<c64>, Vec<c64>) {
    let norm = (1.0 - r * r).sqrt();
    let a = r * xi.conj();
    let b = r * xi;
    let mut k = Vec::with_capacity(s.cols().len());
    let mut m = Vec::with_capacity(s.cols().len());
    for l in s.cols() {
        if l.mode >= 0 {
            k.push(norm * a.powi(l.mode as i32));
            m.push(c64::new(0.0, 0.0));
        } else {
            k.push(c64::new(0.0, 0.0));
            m.push(norm * b.powi((-l.mode - 1) as i32));
        }
    }
    (k, m)
}

fn form(s: &FiniteSection, v: &[c64]) -> c64 {
    let sv = s.data().matvec(v);
    sv.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

/// Quadratic forms of a square `L^2` section against the two kernels; the
/// section must keep `r^(2N)`-accuracy inside its interior margin.
pub fn berezin_section(s: &FiniteSection, r: f64, xi: c64) -> Result<(c64, c64)> {
    if s.rows() != s.cols() {
        return Err(GsioError::InvalidArgument("Berezin transform needs a square section".into()));
    }
    check_tail(r, s.order().saturating_sub(s.interior_margin()))?;
    let (k, m) = kernel_vectors(s, r, xi);
    Ok((form(s, &k), form(s, &m)))
}

/// Symbols recovered on a uniform grid.
#[derive(Clone, Debug)]
pub struct SymbolPair {
    pub f_recovered: Vec<(c64, c64)>,
    pub psi_recovered: Vec<(c64, c64)>,
    /// Largest pointwise distance to the reference pair, when one is supplied.
    pub sup_deviation: Option<f64>,
}

/// Neville evaluation at `t = 0` of the interpolant through `(t_i, y_i)`.
pub fn extrapolate_to_zero(t: &[f64], y: &[c64]) -> c64 {
    let mut p = y.to_vec();
    let n = t.len();
    for level in 1..n {
        for i in 0..n - level {
            let (ti, tj) = (t[i], t[i + level]);
            p[i] = (p[i] * (-tj) - p[i + 1] * (-ti)) / (ti - tj);
        }
    }
    p[0]
}

fn check_schedule(radii: &[f64]) -> Result<()> {
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GsioError::InvalidArgument("radius schedule must be non-empty and increasing".into()));
    }
    Ok(())
}

fn assemble_pair(grid: usize, values: Vec<(c64, c64)>, reference: Option<(&RationalSymbol, &RationalSymbol)>) -> SymbolPair {
    let points: Vec<c64> = (0..grid).map(|j| fft::grid_point(j, grid)).collect();
    let sup_deviation = reference.map(|(f, psi)| {
        points
            .iter()
            .zip(&values)
            .map(|(&xi, (a, b))| (a - f.value_at(xi)).norm().max((b - psi.value_at(xi)).norm()))
            .fold(0.0, f64::max)
    });
    SymbolPair {
        f_recovered: points.iter().zip(&values).map(|(&xi, v)| (xi, v.0)).collect(),
        psi_recovered: points.iter().zip(&values).map(|(&xi, v)| (xi, v.1)).collect(),
        sup_deviation,
    }
}

fn extrapolate_pairs(radii: &[f64], per_radius: &[(c64, c64)]) -> (c64, c64) {
    let t: Vec<f64> = radii.iter().map(|r| 1.0 - r).collect();
    let a: Vec<c64> = per_radius.iter().map(|p| p.0).collect();
    let b: Vec<c64> = per_radius.iter().map(|p| p.1).collect();
    (extrapolate_to_zero(&t, &a), extrapolate_to_zero(&t, &b))
}

/// Berezin pairs along `radii` at `grid` points, extrapolated to `r = 1`
/// in `1 - r`; deviation measured against `(f, psi)`.
pub fn symbol_map_rho(h: &MatrixSymbol, grid: usize, radii: &[f64]) -> Result<SymbolPair> {
    h.require_role(SymbolRole::GsioH)?;
    check_schedule(radii)?;
    // tail r^(4N)
    let orders = radii.iter().map(|&r| kernel_order(r).map(|n| 2 * n)).collect::<Result<Vec<_>>>()?;
    let tables = orders
        .iter()
        .map(|&n| Ok((CoeffTable::new(h.f(), n)?, CoeffTable::new(h.psi(), n)?)))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<(c64, c64)> = (0..grid)
        .into_par_iter()
        .map(|j| {
            let xi = fft::grid_point(j, grid);
            let per: Vec<(c64, c64)> = radii
                .iter()
                .zip(&orders)
                .zip(&tables)
                .map(|((&r, &n), (f, psi))| (poisson_band(f, r, xi, n), poisson_band(psi, r, xi, n)))
                .collect();
            extrapolate_pairs(radii, &per)
        })
        .collect();
    Ok(assemble_pair(grid, values, Some((h.f(), h.psi()))))
}

/// [`symbol_map_rho`] for an assembled section; `sections[i]` is used at `radii[i]`.
pub fn symbol_map_rho_sections(
    sections: &[&FiniteSection],
    grid: usize,
    radii: &[f64],
    reference: Option<(&RationalSymbol, &RationalSymbol)>,
) -> Result<SymbolPair> {
    check_schedule(radii)?;
    if sections.len() != radii.len() {
        return Err(GsioError::InvalidArgument("one section per radius required".into()));
    }
    let values = (0..grid)
        .into_par_iter()
        .map(|j| {
            let xi = fft::grid_point(j, grid);
            let per = radii
                .iter()
                .zip(sections)
                .map(|(&r, s)| berezin_section(s, r, xi))
                .collect::<Result<Vec<_>>>()?;
            Ok(extrapolate_pairs(radii, &per))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble_pair(grid, values, reference))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::section::gsio_section;
    use crate::symbol::LaurentSymbol;

    fn c(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    #[test]
    fn kernel_orders() {
        assert_eq!(kernel_order(0.99).unwrap(), 1375);
        assert_eq!(kernel_order(0.999).unwrap(), 13809);
        assert!(0.9f64.powi(2 * kernel_order(0.9).unwrap() as i32) <= 1e-12);
    }

    #[test]
    fn constant_diagonal_is_exact() {
        let z = RationalSymbol::z_pow(1);
        let h = MatrixSymbol::gsio(3.0, z.clone(), z.conj(), -2.0);
        let (a, b) = berezin_pair(&h, 0.7, c64::from_polar(1.0, 0.3), kernel_order(0.7).unwrap()).unwrap();
        assert!((a - c(3.0)).norm() < 1e-11);
        assert!((b - c(-2.0)).norm() < 1e-11);
    }

    #[test]
    fn poisson_of_cosine() {
        let f = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (-1, c(1.0))]));
        let h = MatrixSymbol::gsio(f, 0.0, 0.0, 1.0);
        let (a, _) = berezin_pair(&h, 0.99, c(1.0), 1375).unwrap();
        assert!((a - c(1.98)).norm() < 1e-10);
        assert!(matches!(berezin_pair(&h, 0.99, c(1.0), 100), Err(GsioError::OrderTooSmall { .. })));
    }

    #[test]
    fn section_form_matches_band_sum() {
        let f = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(2, c64::new(0.5, 0.2)), (-1, c(1.0))]));
        let psi = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(0.3)), (-3, c64::new(0.0, 1.0))]));
        let h = MatrixSymbol::gsio(f, RationalSymbol::z_pow(2), RationalSymbol::z_pow(-1), psi);
        let n = kernel_order(0.9).unwrap();
        let s = gsio_section(&h, n + 3).unwrap();
        let xi = c64::from_polar(1.0, 1.1);
        let (a, b) = berezin_section(&s, 0.9, xi).unwrap();
        let (p, q) = berezin_pair(&h, 0.9, xi, n + 3).unwrap();
        assert!((a - p).norm() < 1e-12 && (b - q).norm() < 1e-12);
    }

    #[test]
    fn neville_is_exact_on_lines() {
        let y = [c(1.0 + 2.0 * 0.1), c(1.0 + 2.0 * 0.01)];
        assert!((extrapolate_to_zero(&[0.1, 0.01], &y) - c(1.0)).norm() < 1e-14);
    }

    #[test]
    fn rho_recovers_smooth_symbols() {
        let f = RationalSymbol::z_pow(1);
        let h = MatrixSymbol::gsio(f, RationalSymbol::z_pow(-3), RationalSymbol::z_pow(2), RationalSymbol::z_pow(-1));
        let p = symbol_map_rho(&h, 64, &[0.9, 0.99]).unwrap();
        assert!(p.sup_deviation.unwrap() < 0.1);
        let h = MatrixSymbol::gsio(2.0, 1.0, 1.0, 5.0);
        assert!(symbol_map_rho(&h, 16, &[0.9, 0.99]).unwrap().sup_deviation.unwrap() < 1e-12);
    }
}
