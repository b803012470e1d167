use faer::Mat;
use num_complex::Complex64 as c64;

use super::{Factors, WHFactorization, RESIDUAL_TOL};
use crate::error::{GsioError, Result};
use crate::fft;
use crate::section::block_toeplitz_tall;
use crate::spectral::singular_values;
use crate::symbol::{laurent_approximation, sampled_winding_of, winding_number, LaurentSymbol, MatrixSymbol, RationalSymbol, SymbolRole};

/// Singular values below `KERNEL_REL * sigma_max` count as kernel.
pub const KERNEL_REL: f64 = 1e-8;
const APPROX_TOL: f64 = 1e-12;
const MIN_PROBE: usize = 64;
const MAX_PROBE: usize = 768;
const MAX_BANDWIDTH: usize = 256;
const ZERO: c64 = c64::new(0.0, 0.0);

type Grid2 = Vec<[[c64; 2]; 2]>;

/// Laurent approximation of a 2x2 symbol (exact for Laurent entries).
struct Approx {
    symbol: MatrixSymbol,
    entries: [[LaurentSymbol; 2]; 2],
}

impl Approx {
    fn new(f: &MatrixSymbol) -> Result<Self> {
        let e = |i, j| laurent_approximation(f.entry(i, j), APPROX_TOL);
        let entries = [[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]];
        let symbol = MatrixSymbol::from_laurent(entries.clone(), SymbolRole::Generic);
        Ok(Approx { symbol, entries })
    }

    fn max_mode(&self) -> i64 {
        self.entries.iter().flatten().filter_map(|s| s.max_mode()).max().unwrap_or(0)
    }

    /// `T(z^-m F)` on `n` modes, with enough rows to hold the whole image.
    fn tall_section(&self, m: i64, n: usize) -> Result<Mat<c64>> {
        let shifted = self.symbol.map(|s| s.mul(&RationalSymbol::z_pow(-m)));
        let extra = (self.max_mode() - m).max(0) as usize;
        Ok(block_toeplitz_tall(&shifted, n, n + extra)?.to_dense())
    }

    fn kernel_dim(&self, m: i64, n: usize) -> Result<usize> {
        let sv = singular_values(&self.tall_section(m, n)?)?;
        let top = sv.first().copied().unwrap_or(0.0);
        let rank = sv.iter().filter(|&&s| s >= KERNEL_REL * top).count();
        Ok(2 * n - rank)
    }

    /// Orthonormal basis of the numerical kernel, one column per vector
    /// (interleaved coefficients `v[2j + c]`).
    fn kernel_basis(&self, m: i64, n: usize) -> Result<Mat<c64>> {
        null_space(&self.tall_section(m, n)?)
    }
}

fn null_space(a: &Mat<c64>) -> Result<Mat<c64>> {
    let svd = a.thin_svd().map_err(|e| GsioError::EigSolverFailure(format!("{e:?}")))?;
    let s = svd.S().column_vector();
    let v = svd.V();
    let k = s.nrows();
    let top = (0..k).map(|i| s[i].re).fold(0.0, f64::max);
    let idx: Vec<usize> = (0..k).filter(|&i| s[i].re < KERNEL_REL * top).collect();
    Ok(Mat::from_fn(v.nrows(), idx.len(), |r, c| v[(r, idx[c])]))
}

/// Decay rate bounding the kernel functions: poles of the entries and zeros of the determinant.
fn decay_rate(f: &MatrixSymbol, det: &RationalSymbol) -> Result<f64> {
    let q = |r: &c64| if r.norm() < 1.0 { r.norm() } else { 1.0 / r.norm() };
    let poles = f.entries().iter().flatten().flat_map(|s| s.denominator_roots().iter().map(q).collect::<Vec<_>>());
    let zeros = det.numerator_roots()?.iter().map(q).collect::<Vec<_>>();
    Ok(poles.chain(zeros).fold(0.0, f64::max))
}

/// Probe order: decay length of the kernel functions plus room for index
/// spread, rounded up to a multiple of 32.
fn probe_order(rate: f64, reach: usize) -> usize {
    let need = if rate == 0.0 { 0 } else { (30.0 / -rate.ln()).ceil() as usize };
    ((need + 4 * reach + 16).div_ceil(32) * 32).max(MIN_PROBE)
}

/// Degree span of numerator plus denominator, maximized over entries.
fn polynomial_reach(f: &MatrixSymbol) -> usize {
    f.entries().iter().flatten().map(|s| s.numerator().bandwidth() + s.denominator().bandwidth()).max().unwrap_or(0)
}

/// Partial indices `(kappa1 >= kappa2)` from kernel dimensions of shifted sections.
fn partial_indices(approx: &Approx, total: i64, n: usize) -> Result<(i64, i64)> {
    let m0 = total.div_euclid(2);
    let k0 = approx.kernel_dim(m0, n)?;
    let k0b = approx.kernel_dim(m0, 2 * n)?;
    if k0 != k0b {
        return Err(GsioError::ProbeUnstable(format!("dim ker at shift {m0}: {k0} (N={n}) vs {k0b} (N={})", 2 * n)));
    }
    let kappa2 = m0 - k0 as i64;
    let kappa1 = total - kappa2;
    let at = approx.kernel_dim(kappa2, n)?;
    let above = approx.kernel_dim(kappa2 + 1, n)?;
    let want_above = if kappa1 == kappa2 { 2 } else { 1 };
    if at != 0 || above != want_above {
        return Err(GsioError::ProbeUnstable(format!(
            "indices ({kappa1}, {kappa2}) predict kernel dims (0, {want_above}) but probes give ({at}, {above})"
        )));
    }
    Ok((kappa1, kappa2))
}

fn column(m: &Mat<c64>, j: usize) -> Vec<c64> {
    (0..m.nrows()).map(|i| m[(i, j)]).collect()
}

/// Columns of `F_+^-1` as interleaved coefficient vectors.
fn plus_inverse_columns(approx: &Approx, k1: i64, k2: i64, n: usize) -> Result<[Vec<c64>; 2]> {
    if k1 == k2 {
        let b = approx.kernel_basis(k1 + 1, n)?;
        if b.ncols() != 2 {
            return Err(GsioError::ProbeUnstable(format!("expected a 2-dimensional kernel, found {}", b.ncols())));
        }
        return Ok([column(&b, 0), column(&b, 1)]);
    }
    let b2 = approx.kernel_basis(k2 + 1, n)?;
    if b2.ncols() != 1 {
        return Err(GsioError::ProbeUnstable(format!("expected a 1-dimensional kernel, found {}", b2.ncols())));
    }
    let x2 = column(&b2, 0);
    let b1 = approx.kernel_basis(k1 + 1, n)?;
    let gap = (k1 - k2) as usize;
    if b1.ncols() != gap + 2 {
        return Err(GsioError::ProbeUnstable(format!("expected a {}-dimensional kernel, found {}", gap + 2, b1.ncols())));
    }
    // orthonormal basis of span{z^j x2}
    let mut q: Vec<Vec<c64>> = Vec::new();
    for j in 0..=gap {
        let mut v = vec![ZERO; 2 * n];
        for i in 0..2 * n - 2 * j {
            v[i + 2 * j] = x2[i];
        }
        for u in &q {
            let p: c64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            v.iter_mut().zip(u).for_each(|(a, b)| *a -= p * b);
        }
        let nv = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= nv);
        q.push(v);
    }
    let rest = Mat::<c64>::from_fn(2 * n, b1.ncols(), |i, c| {
        let col = column(&b1, c);
        let mut v = col[i];
        for u in &q {
            let p: c64 = u.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
            v -= p * u[i];
        }
        v
    });
    let svd = rest.thin_svd().map_err(|e| GsioError::EigSolverFailure(format!("{e:?}")))?;
    let (u, s) = (svd.U(), svd.S().column_vector());
    let best = (0..s.nrows()).max_by(|&a, &b| s[a].re.partial_cmp(&s[b].re).unwrap()).unwrap();
    Ok([(0..2 * n).map(|i| u[(i, best)]).collect(), x2])
}

fn inv2(m: &[[c64; 2]; 2]) -> [[c64; 2]; 2] {
    let det = det2(m);
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

fn det2(m: &[[c64; 2]; 2]) -> c64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn mul2(a: &[[c64; 2]; 2], b: &[[c64; 2]; 2]) -> [[c64; 2]; 2] {
    let e = |i: usize, j: usize| a[i][0] * b[0][j] + a[i][1] * b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Constant `C` with `C P` upper triangular with positive diagonal, where
/// `D C^-1 D^-1` stays co-analytic (`C` lower triangular when `k1 > k2`).
fn normalizer(p: &[[c64; 2]; 2], equal: bool) -> Option<[[c64; 2]; 2]> {
    let scale = p.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max);
    if equal {
        let (a, b) = (p[0][0], p[1][0]);
        let r11 = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let q1 = [a / r11, b / r11];
        let mut q2 = [-b.conj() / r11, a.conj() / r11];
        let r22 = q2[0].conj() * p[0][1] + q2[1].conj() * p[1][1];
        let phase = r22 / r22.norm();
        q2 = [q2[0] * phase, q2[1] * phase];
        // C = Q^H
        return Some([[q1[0].conj(), q1[1].conj()], [q2[0].conj(), q2[1].conj()]]);
    }
    let p11 = p[0][0];
    if p11.norm() <= 1e-10 * scale {
        return None;
    }
    let det = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    let l11 = c64::new(p11.norm(), 0.0) / p11;
    let schur = det / p11;
    let l22 = c64::new(schur.norm(), 0.0) / schur;
    let l21 = -l22 * p[1][0] / p11;
    Some([[l11, ZERO], [l21, l22]])
}

fn sample_columns(cols: &[Vec<c64>; 2], n: usize, m: usize) -> Grid2 {
    let comp = |x: &Vec<c64>, c: usize| {
        let mut buf = vec![ZERO; m];
        for j in 0..n {
            buf[j] = x[2 * j + c];
        }
        fft::synthesize(&buf)
    };
    let s = [[comp(&cols[0], 0), comp(&cols[1], 0)], [comp(&cols[0], 1), comp(&cols[1], 1)]];
    (0..m).map(|k| [[s[0][0][k], s[0][1][k]], [s[1][0][k], s[1][1][k]]]).collect()
}

fn analyze_grid(g: &Grid2) -> [[Vec<c64>; 2]; 2] {
    let e = |i: usize, j: usize| fft::analyze(&g.iter().map(|v| v[i][j]).collect::<Vec<_>>());
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn truncate(coeffs: &[[Vec<c64>; 2]; 2], modes: impl Iterator<Item = i64> + Clone) -> MatrixSymbol {
    let m = coeffs[0][0].len();
    let e = |i: usize, j: usize| {
        RationalSymbol::from_laurent(LaurentSymbol::from_pairs(
            modes.clone().map(|k| (k, coeffs[i][j][fft::index_of_mode(k, m)])),
        ))
    };
    MatrixSymbol::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]], SymbolRole::Generic)
}

fn max_on(coeffs: &[[Vec<c64>; 2]; 2], modes: impl Iterator<Item = i64> + Clone) -> f64 {
    let m = coeffs[0][0].len();
    coeffs
        .iter()
        .flatten()
        .map(|c| modes.clone().map(|k| c[fft::index_of_mode(k, m)].norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max)
}

/// Largest entrywise `|F - F_- D F_+|` over 512 grid points.
pub fn matrix_residual(f: &MatrixSymbol, minus: &MatrixSymbol, kappa: &[i64], plus: &MatrixSymbol) -> f64 {
    (0..512)
        .map(|j| {
            let xi = fft::grid_point(j, 512);
            let d = [[xi.powi(kappa[0] as i32), ZERO], [ZERO, xi.powi(kappa[1] as i32)]];
            let r = mul2(&mul2(&minus.value_at(xi), &d), &plus.value_at(xi));
            let fv = f.value_at(xi);
            (0..2).flat_map(|a| (0..2).map(move |b| (a, b))).map(|(a, b)| (fv[a][b] - r[a][b]).norm()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// `F = F_- diag(z^k1, z^k2) F_+` with `k1 >= k2`.
pub fn wh_matrix2(f: &MatrixSymbol) -> Result<WHFactorization> {
    let det = f.det();
    let total = winding_number(&det).map_err(|e| match e {
        GsioError::NotInvertibleOnCircle { modulus, .. } => GsioError::vanishes("det F", modulus),
        other => other,
    })?;
    let approx = Approx::new(f)?;
    let n = probe_order(decay_rate(f, &det)?, polynomial_reach(f) + total.unsigned_abs() as usize);
    if n > MAX_PROBE {
        return Err(GsioError::ProbeUnstable(format!("probe order {n} exceeds {MAX_PROBE}")));
    }
    let (k1, k2) = partial_indices(&approx, total, n)?;

    let mut cols = plus_inverse_columns(&approx, k1, k2, n)?;
    let x0 = [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]];
    let c = normalizer(&inv2(&x0), k1 == k2);
    if let Some(c) = &c {
        // X <- X C^-1
        let ci = inv2(c);
        let old = cols.clone();
        for i in 0..n {
            for comp in 0..2 {
                let (a, b) = (old[0][2 * i + comp], old[1][2 * i + comp]);
                cols[0][2 * i + comp] = a * ci[0][0] + b * ci[1][0];
                cols[1][2 * i + comp] = a * ci[0][1] + b * ci[1][1];
            }
        }
    }

    let m = (4 * n).next_power_of_two().max(512);
    let x = sample_columns(&cols, n, m);
    let mut plus_grid = Grid2::with_capacity(m);
    let mut minus_grid = Grid2::with_capacity(m);
    for (j, xv) in x.iter().enumerate() {
        let xi = fft::grid_point(j, m);
        plus_grid.push(inv2(xv));
        let dinv = [[xi.powi(-k1 as i32), ZERO], [ZERO, xi.powi(-k2 as i32)]];
        minus_grid.push(mul2(&mul2(&f.value_at(xi), xv), &dinv));
    }
    let pc = analyze_grid(&plus_grid);
    let mc = analyze_grid(&minus_grid);
    let half = (m / 2) as i64;
    let scale = max_on(&pc, 0..half).max(max_on(&mc, -half + 1..1)).max(1.0);
    let stray = max_on(&pc, -half + 1..0).max(max_on(&mc, 1..half));
    if stray > 1e-8 * scale {
        return Err(GsioError::ResidualTooLarge { residual: stray, tolerance: 1e-8 * scale });
    }

    let mut bandwidth = 16usize;
    let mut last = f64::INFINITY;
    while bandwidth <= MAX_BANDWIDTH {
        let b = bandwidth.min(m / 2 - 1) as i64;
        let plus = truncate(&pc, 0..=b);
        let minus = truncate(&mc, -b..=0);
        let kappa = vec![k1, k2];
        let residual = matrix_residual(f, &minus, &kappa, &plus);
        last = residual;
        if residual <= RESIDUAL_TOL {
            let w_plus = sampled_winding_of(&|z| det2(&plus.value_at(z)))?;
            let w_minus = sampled_winding_of(&|z| det2(&minus.value_at(z)))?;
            if w_plus != 0 || w_minus != 0 {
                return Err(GsioError::InternalInconsistency(format!(
                    "factor determinants wind {w_plus} (plus) and {w_minus} (minus)"
                )));
            }
            return Ok(WHFactorization {
                factors: Factors::Matrix { minus, plus },
                kappa,
                reconstruction_residual: residual,
                normalized: c.is_some(),
                bandwidth: Some(b as usize),
            });
        }
        bandwidth *= 2;
    }
    Err(GsioError::ResidualTooLarge { residual: last, tolerance: RESIDUAL_TOL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    fn generic(e: [[RationalSymbol; 2]; 2]) -> MatrixSymbol {
        MatrixSymbol::new(e, SymbolRole::Generic)
    }

    fn is_identity(m: &MatrixSymbol) -> bool {
        let v = m.value_at(c64::from_polar(1.0, 0.7));
        (v[0][0] - c(1.0)).norm() < 1e-9 && (v[1][1] - c(1.0)).norm() < 1e-9 && v[0][1].norm() < 1e-9 && v[1][0].norm() < 1e-9
    }

    #[test]
    fn diagonal_monomials() {
        let f = MatrixSymbol::diagonal(RationalSymbol::z_pow(2), RationalSymbol::z_pow(-1), SymbolRole::Generic);
        let w = wh_matrix2(&f).unwrap();
        assert_eq!(w.kappa, vec![2, -1]);
        let Factors::Matrix { minus, plus } = &w.factors else { panic!() };
        assert!(is_identity(minus) && is_identity(plus));
        assert!(w.reconstruction_residual < 1e-10);
    }

    #[test]
    fn diagonal_is_sorted_descending() {
        let f = MatrixSymbol::diagonal(RationalSymbol::z_pow(-2), RationalSymbol::z_pow(1), SymbolRole::Generic);
        let w = wh_matrix2(&f).unwrap();
        assert_eq!(w.kappa, vec![1, -2]);
        assert!(w.reconstruction_residual < 1e-10);
    }

    #[test]
    fn constant_swap() {
        let m1 = RationalSymbol::constant(-1.0);
        let f = generic([[RationalSymbol::zero(), m1.clone()], [m1, RationalSymbol::zero()]]);
        let w = wh_matrix2(&f).unwrap();
        assert_eq!(w.kappa, vec![0, 0]);
        assert!(w.reconstruction_residual < 1e-12);
        let Factors::Matrix { plus, .. } = &w.factors else { panic!() };
        let p0 = plus.value_at(c(1.0));
        assert!(p0[1][0].norm() < 1e-12 && p0[0][0].im.abs() < 1e-12 && p0[0][0].re > 0.0 && p0[1][1].re > 0.0);
    }

    #[test]
    fn triangular_case() {
        let a = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(0, c(2.0)), (1, c(-1.0))]));
        let f = generic([[a.clone(), RationalSymbol::zero()], [RationalSymbol::constant(1.0), a.conj()]]);
        let w = wh_matrix2(&f).unwrap();
        assert_eq!(w.kappa, vec![0, 0]);
        assert!(w.reconstruction_residual <= 1e-8);
    }

    #[test]
    fn coherent_with_scalar_windings() {
        // (z - 1/2) and 1/(z - 1/3): windings 1 and -1
        let s1 = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (0, c(-0.5))]));
        let s2 = RationalSymbol::new(LaurentSymbol::one(), LaurentSymbol::from_pairs([(1, c(1.0)), (0, c(-1.0 / 3.0))])).unwrap();
        let w = wh_matrix2(&MatrixSymbol::diagonal(s2, s1, SymbolRole::Generic)).unwrap();
        assert_eq!(w.kappa, vec![1, -1]);
        assert!(w.reconstruction_residual <= 1e-8);
    }

    #[test]
    fn mixed_non_diagonal() {
        // [[z, 1], [0, zbar]]: det 1, partial indices (0, 0)
        let f = generic([
            [RationalSymbol::z_pow(1), RationalSymbol::constant(1.0)],
            [RationalSymbol::zero(), RationalSymbol::z_pow(-1)],
        ]);
        let w = wh_matrix2(&f).unwrap();
        assert_eq!(w.kappa, vec![0, 0]);
        assert!(w.reconstruction_residual <= 1e-8);
        // [[z^2, 0], [1, z^-2]] has indices (1, -1)
        let f = generic([
            [RationalSymbol::z_pow(2), RationalSymbol::zero()],
            [RationalSymbol::constant(1.0), RationalSymbol::z_pow(-2)],
        ]);
        let w = wh_matrix2(&f).unwrap();
        assert_eq!(w.kappa.iter().sum::<i64>(), 0);
        assert!(w.reconstruction_residual <= 1e-8);
    }

    #[test]
    fn singular_determinant() {
        let z1 = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (0, c(-1.0))]));
        let f = MatrixSymbol::diagonal(z1, RationalSymbol::constant(1.0), SymbolRole::Generic);
        assert!(matches!(wh_matrix2(&f), Err(GsioError::NotInvertibleOnCircle { .. })));
    }
}
