//! The acceptance battery: twelve numbered checks shared by the test suite
//! and `gsio verify`.

use std::time::Instant;

use num_complex::Complex64 as c64;

use crate::error::{GsioError, Result};
use crate::fft;
use crate::oracle::{compare_action, random_symbol, trial_seed};
use crate::section::{
    extension_blocks, extension_identity_residual, foguel_hankel_section, gsio_section, v_basis_map, FiniteSection,
};
use crate::spectral::{
    berezin_pair, berezin_section, classify, dense_spectrum, doubling_commutator, doubling_order, fredholm_index,
    hankel_distance, kernel_order, numerical_rank, smallest_singular, symbol_map_rho, Flags,
    InclusionTester,
};
use crate::symbol::{winding_number, LaurentSymbol, MatrixSymbol, RationalSymbol, SymbolRole};
use crate::wiener_hopf::{fredholm_verdict, kernel_dims, wh_matrix2, wh_scalar, WHFactorization};

pub const CRITERIA: [&str; 12] = [
    "assembly matches grid oracle",
    "Berezin/Poisson exactness and symbol recovery",
    "doubling commutator Berezin value",
    "semicommutator finite rank",
    "Nehari distances",
    "index formula and monomial kernels",
    "extension identity and det(B^-1 A)",
    "Wiener-Hopf reconstruction and index sums",
    "eigenvalues inside inclusion region",
    "essential spectrum pseudospectral probe",
    "Foguel-Hankel spectral radius",
    "classification truth table",
];

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

type Outcome = Result<(bool, String)>;

fn c(x: f64) -> c64 {
    c64::new(x, 0.0)
}

fn lp(pairs: &[(i64, f64)]) -> RationalSymbol {
    RationalSymbol::from_laurent(LaurentSymbol::from_pairs(pairs.iter().map(|&(k, v)| (k, c(v)))))
}

fn within(passed: bool, elapsed: f64, limit: f64) -> bool {
    passed && elapsed <= limit
}

pub fn run_criterion(id: usize, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => assembly(seed),
        2 => berezin(seed),
        3 => doubling(),
        4 => semicommutator(seed),
        5 => nehari(),
        6 => index_formula(seed),
        7 => extension(seed),
        8 => wiener_hopf(seed),
        9 => inclusion(seed),
        10 => essential(),
        11 => foguel(seed),
        12 => truth_table(),
        _ => Err(GsioError::InvalidArgument(format!("no criterion {id}"))),
    };
    let seconds = start.elapsed().as_secs_f64();
    let limit = match id {
        1 => 30.0,
        2 => 60.0,
        6 => 20.0,
        _ => f64::INFINITY,
    };
    let (passed, detail) = match outcome {
        Ok((p, d)) => (within(p, seconds, limit), if seconds > limit { format!("{d}; over {limit}s budget") } else { d }),
        Err(e) => (false, format!("error {}: {e}", e.reason())),
    };
    CriterionResult { id, name: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), passed, detail, seconds }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, seed)).collect()
}

fn assembly(seed: u64) -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..100u64 {
        let h = random_symbol((i % 5) as usize, trial_seed(seed, i));
        worst = worst.max(compare_action(&h, 64, 20, trial_seed(seed, 1000 + i))?);
    }
    Ok((worst <= 1e-10, format!("max relative residual {worst:.3e} over 100 symbols")))
}

/// `sum s^(k) r^|k| xi^k`.
fn poisson_oracle(s: &RationalSymbol, r: f64, xi: c64) -> c64 {
    s.as_laurent().unwrap().terms().map(|(k, v)| v * r.powi(k.abs() as i32) * xi.powi(k as i32)).sum()
}

fn berezin(seed: u64) -> Outcome {
    let r = 0.99;
    let n = kernel_order(r)?;
    let (mut pair_err, mut section_err, mut recovery) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..20u64 {
        let d = (i % 6) as usize;
        let h = random_symbol(d, trial_seed(seed, 2000 + i));
        let section = gsio_section(&h, n + d)?;
        for j in 0..64 {
            let xi = fft::grid_point(j, 64);
            let want = (poisson_oracle(h.f(), r, xi), poisson_oracle(h.psi(), r, xi));
            let got = berezin_pair(&h, r, xi, n)?;
            pair_err = pair_err.max((got.0 - want.0).norm()).max((got.1 - want.1).norm());
            let got = berezin_section(&section, r, xi)?;
            section_err = section_err.max((got.0 - want.0).norm()).max((got.1 - want.1).norm());
        }
        let l1 = |s: &RationalSymbol| s.as_laurent().unwrap().l1_norm();
        let rho = symbol_map_rho(&h, 64, &[0.9, 0.99])?;
        let scale = l1(h.f()).max(l1(h.psi()));
        recovery = recovery.max(rho.sup_deviation.unwrap() / scale);
    }
    Ok((
        pair_err <= 1e-8 && section_err <= 1e-8 && recovery <= 0.1,
        format!("pair {pair_err:.2e}, assembled {section_err:.2e}, recovery/l1 {recovery:.2e}"),
    ))
}

fn doubling() -> Outcome {
    let mut worst = 0.0f64;
    for r in [0.9, 0.99, 0.999] {
        let s = doubling_commutator(doubling_order(r)?)?;
        for theta in [0.0, 1.3, 4.0] {
            let (a, _) = berezin_section(&s, r, c64::from_polar(1.0, theta))?;
            worst = worst.max((a - c(1.0 / (1.0 + r * r))).norm());
        }
    }
    Ok((worst <= 1e-8, format!("max |B - 1/(1+r^2)| = {worst:.2e}")))
}

/// `[[f1 f2, f1 phi2 + phi1 psi2], [g1 f2 + psi1 g2, psi1 psi2]]`.
pub fn semicommutator_symbol(h1: &MatrixSymbol, h2: &MatrixSymbol) -> MatrixSymbol {
    let m = h1.mul(h2);
    MatrixSymbol::gsio(h1.f().mul(h2.f()), m.phi().clone(), m.g().clone(), h1.psi().mul(h2.psi()))
}

/// Numerical ranks (singular values above `1e-10`) of the interior of
/// `R_H1 R_H2 - R_H12` at order `n`: whole matrix, then the `P+ . P+` and
/// `P- . P-` blocks.
pub fn semicommutator_rank(h1: &MatrixSymbol, h2: &MatrixSymbol, n: usize) -> Result<(usize, usize, usize)> {
    let d = h1.laurent_bandwidth().unwrap_or(n).max(h2.laurent_bandwidth().unwrap_or(n));
    let prod = gsio_section(h1, n)?.mul(&gsio_section(h2, n)?)?;
    let single = gsio_section(&semicommutator_symbol(h1, h2), n)?;
    let diff = prod.sub(&single)?.interior(2 * d);
    let side = |analytic: bool| -> Vec<usize> {
        diff.rows().iter().enumerate().filter(|(_, l)| (l.mode >= 0) == analytic).map(|(i, _)| i).collect()
    };
    let (plus, minus) = (side(true), side(false));
    let rank = |m: &crate::section::CsrMatrix| numerical_rank(&m.to_dense(), 1e-10);
    Ok((rank(diff.data())?, rank(&diff.data().select(&plus, &plus))?, rank(&diff.data().select(&minus, &minus))?))
}

fn semicommutator(seed: u64) -> Outcome {
    let mut report = Vec::new();
    let mut ok = true;
    for d in 1..=4usize {
        let (mut worst, mut block) = (0, 0);
        for t in 0..3u64 {
            let h1 = random_symbol(d, trial_seed(seed, 3000 + 10 * d as u64 + t));
            let h2 = random_symbol(d, trial_seed(seed, 4000 + 10 * d as u64 + t));
            let (r, pp, mm) = semicommutator_rank(&h1, &h2, 16 * d + 16)?;
            worst = worst.max(r);
            block = block.max(pp).max(mm);
        }
        ok &= worst <= 2 * d;
        report.push(format!("d={d}: rank {worst}, diagonal blocks {block} (bound {})", 2 * d));
    }
    Ok((ok, report.join(", ")))
}

fn nehari() -> Outcome {
    let mut worst = 0.0f64;
    for n in [1, 2, 8, 64] {
        worst = worst.max((hankel_distance(&RationalSymbol::z_pow(-1), n)? - 1.0).abs());
        worst = worst.max((hankel_distance(&lp(&[(-1, 1.0), (1, 1.0)]), n)? - 1.0).abs());
        worst = worst.max(hankel_distance(&lp(&[(0, 1.0), (2, -3.0)]), n)?);
        worst = worst.max(hankel_distance(&RationalSymbol::z_pow(5), n)?);
    }
    Ok((worst <= 1e-15, format!("max deviation {worst:.1e}")))
}

/// Kernel dimension of `R_H` read off monomials: interior columns of the
/// section that vanish identically.
pub fn monomial_kernel_dim(h: &MatrixSymbol, n: usize) -> Result<usize> {
    let s = gsio_section(h, n)?;
    let margin = s.interior_margin();
    let dense = s.to_dense();
    Ok(s.cols()
        .iter()
        .enumerate()
        .filter(|(j, l)| s.depth(**l) >= margin && (0..dense.nrows()).all(|i| dense[(i, *j)] == c(0.0)))
        .count())
}

/// `z^a` as a polynomial fraction (`1 / z^-a` for negative `a`).
fn monomial_rational(a: i64) -> Result<RationalSymbol> {
    if a >= 0 {
        Ok(RationalSymbol::z_pow(a))
    } else {
        RationalSymbol::new(LaurentSymbol::one(), LaurentSymbol::z_pow(-a))
    }
}

fn index_formula(seed: u64) -> Outcome {
    let mut failures = Vec::new();
    for a in -3..=3i64 {
        for b in -3..=3i64 {
            let f = monomial_rational(a)?;
            let psi = RationalSymbol::z_pow(b);
            let r = random_symbol(2, trial_seed(seed, (5000 + 7 * (a + 3) + (b + 3)) as u64));
            let h = MatrixSymbol::gsio(f.clone(), r.phi().clone(), r.g().clone(), psi.clone());
            if fredholm_index(&h)? != b - a {
                failures.push(format!("index({a},{b})"));
            }
            let h0 = MatrixSymbol::gsio(f, 0.0, 0.0, psi);
            let v = fredholm_verdict(&h0)?;
            let brute = monomial_kernel_dim(&h0, 16)?;
            let (ker, coker) = v.witness.as_ref().map(|w| kernel_dims(&w.kappa)).unwrap_or((u64::MAX, u64::MAX));
            if brute as u64 != ker || v.dim_ker != ker || v.dim_coker != coker || v.index != Some(b - a) {
                failures.push(format!("kernel({a},{b}): brute {brute}, verdict {}", v.dim_ker));
            }
        }
    }
    Ok((failures.is_empty(), if failures.is_empty() { "49 cases".into() } else { failures.join("; ") }))
}

/// Seeded random symbol whose `psi` does not vanish on the circle.
fn random_invertible_psi(degree: usize, seed: u64) -> MatrixSymbol {
    (0..)
        .map(|k| random_symbol(degree, trial_seed(seed, k)))
        .find(|h| h.psi().invert().is_ok())
        .expect("unbounded search")
}

fn extension(seed: u64) -> Outcome {
    let (mut id_res, mut det_res) = (0.0f64, 0.0f64);
    for i in 0..20u64 {
        let h = random_invertible_psi((i % 3) as usize, trial_seed(seed, 6000 + i));
        id_res = id_res.max(extension_identity_residual(&h, 32)?);
        det_res = det_res.max(extension_blocks(&h)?.det_residual);
    }
    Ok((id_res <= 1e-10 && det_res <= 1e-10, format!("identity {id_res:.2e}, det {det_res:.2e}")))
}

fn roots_symbol(num: &[c64], den: &[c64], shift: i64) -> Result<RationalSymbol> {
    let poly = |roots: &[c64]| LaurentSymbol::from_coeffs(0, crate::symbol::poly::from_roots(roots, c(1.0)));
    RationalSymbol::new(poly(num).shift(shift), poly(den))
}

/// Ten rational symbols with zeros and poles on both sides of the circle.
pub fn scalar_battery() -> Result<Vec<RationalSymbol>> {
    let p = |re: f64, im: f64| c64::new(re, im);
    let cases: Vec<(Vec<c64>, Vec<c64>, i64)> = vec![
        (vec![p(0.5, 0.0)], vec![p(3.0, 0.0)], 0),
        (vec![p(2.0, 0.0)], vec![p(0.25, 0.1)], 0),
        (vec![p(0.3, 0.4), p(-2.0, 1.0)], vec![p(1.5, -1.5)], 0),
        (vec![p(0.1, 0.0), p(0.0, 0.6)], vec![p(-0.5, 0.0), p(4.0, 0.0)], 1),
        (vec![p(1.2, 0.0), p(-1.3, 0.2)], vec![p(0.7, 0.0)], -2),
        (vec![p(0.9, 0.0), p(1.1, 0.0)], vec![p(0.0, 0.5), p(0.0, -2.0)], 0),
        (vec![p(-0.4, -0.4), p(2.5, 2.5), p(0.2, 0.0)], vec![p(5.0, 0.0)], 0),
        (vec![p(3.0, 0.0)], vec![p(0.5, 0.5), p(-0.5, 0.5), p(6.0, 0.0)], 2),
        (vec![p(0.8, 0.0)], vec![p(1.25, 0.0)], -1),
        (vec![p(-0.6, 0.0), p(1.7, -0.3), p(0.05, 0.05)], vec![p(0.3, 0.0), p(-3.0, 0.0)], 0),
    ];
    cases.iter().map(|(n, d, s)| roots_symbol(n, d, *s)).collect()
}

/// Diagonal, constant and triangular matrix symbols.
pub fn matrix_battery() -> Result<Vec<MatrixSymbol>> {
    let g = |e: [[RationalSymbol; 2]; 2]| MatrixSymbol::new(e, SymbolRole::Generic);
    let z = RationalSymbol::z_pow;
    let zero = RationalSymbol::zero;
    let two_minus_z = lp(&[(0, 2.0), (1, -1.0)]);
    let s = scalar_battery()?;
    Ok(vec![
        MatrixSymbol::diagonal(z(2), z(-1), SymbolRole::Generic),
        MatrixSymbol::diagonal(z(-2), z(1), SymbolRole::Generic),
        MatrixSymbol::diagonal(s[0].clone(), s[3].clone(), SymbolRole::Generic),
        MatrixSymbol::diagonal(s[4].clone(), s[8].clone(), SymbolRole::Generic),
        g([[zero(), RationalSymbol::constant(-1.0)], [RationalSymbol::constant(-1.0), zero()]]),
        g([[RationalSymbol::constant(2.0), RationalSymbol::constant(1.0)], [zero(), RationalSymbol::constant(c64::new(0.0, 1.0))]]),
        g([[two_minus_z.clone(), zero()], [RationalSymbol::constant(1.0), two_minus_z.conj()]]),
        g([[z(1), RationalSymbol::constant(1.0)], [zero(), z(-1)]]),
    ])
}

/// GSIO symbols for verdict checks.
pub fn verdict_battery(seed: u64) -> Result<Vec<MatrixSymbol>> {
    let z = RationalSymbol::z_pow;
    let three_plus = |k: i64| lp(&[(0, 3.0), (k, 1.0)]);
    let small = random_symbol(1, trial_seed(seed, 7000));
    let scale = c(0.2);
    Ok(vec![
        MatrixSymbol::gsio(1.0, 0.0, 0.0, 1.0),
        MatrixSymbol::gsio(z(1), 0.0, 0.0, 1.0),
        MatrixSymbol::gsio(z(2), 0.0, 0.0, z(3)),
        MatrixSymbol::gsio(z(-1), z(1), z(-1), z(2)),
        MatrixSymbol::gsio(three_plus(1), small.phi().scale(scale), small.g().scale(scale), three_plus(-1)),
        MatrixSymbol::gsio(three_plus(1).mul(&z(1)), small.phi().scale(scale), small.g().scale(scale), three_plus(-1)),
        MatrixSymbol::gsio(roots_symbol(&[c(0.5)], &[c(2.0)], 0)?, z(1), z(-1), 1.0),
    ])
}

fn check_wh(w: &WHFactorization, det: &RationalSymbol) -> Result<bool> {
    Ok(w.reconstruction_residual <= 1e-8 && w.kappa.iter().sum::<i64>() == winding_number(det)?)
}

fn wiener_hopf(seed: u64) -> Outcome {
    let mut worst = 0.0f64;
    let mut bad = Vec::new();
    for (i, s) in scalar_battery()?.iter().enumerate() {
        let w = wh_scalar(s)?;
        worst = worst.max(w.reconstruction_residual);
        if !check_wh(&w, s)? {
            bad.push(format!("scalar {i}"));
        }
    }
    for (i, f) in matrix_battery()?.iter().enumerate() {
        let w = wh_matrix2(f)?;
        worst = worst.max(w.reconstruction_residual);
        if !check_wh(&w, &f.det())? {
            bad.push(format!("matrix {i}"));
        }
    }
    let mut inconsistent = 0;
    for h in verdict_battery(seed)? {
        match fredholm_verdict(&h) {
            Ok(v) if v.index == Some(fredholm_index(&h)?) => {}
            Ok(_) | Err(GsioError::InternalInconsistency(_)) => inconsistent += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((
        bad.is_empty() && inconsistent == 0,
        format!("max residual {worst:.2e}, failures [{}], inconsistent verdicts {inconsistent}", bad.join(", ")),
    ))
}

fn inclusion(seed: u64) -> Outcome {
    let mut outside = 0;
    let mut total = 0;
    for i in 0..20u64 {
        let h = random_symbol((i % 4) as usize, trial_seed(seed, 8000 + i));
        let eig = dense_spectrum(&gsio_section(&h, 256)?)?;
        let tester = InclusionTester::new(&h, 256)?;
        total += eig.len();
        outside += eig.iter().filter(|&&l| !tester.contains_dilated(l, 0.05)).count();
    }
    Ok((outside == 0, format!("{outside} of {total} eigenvalues outside the 0.05-dilated region")))
}

fn essential() -> Outcome {
    let z = RationalSymbol::z_pow(1);
    let s = gsio_section(&MatrixSymbol::gsio(z.clone(), 0.0, 0.0, z), 512)?;
    let on = (0..32).map(|j| smallest_singular(&s, fft::grid_point(j, 32))).collect::<Result<Vec<_>>>()?;
    let off = (0..8)
        .map(|j| smallest_singular(&s, c64::from_polar(2.0, std::f64::consts::TAU * j as f64 / 8.0)))
        .collect::<Result<Vec<_>>>()?;
    let max_on = on.into_iter().fold(0.0, f64::max);
    let min_off = off.into_iter().fold(f64::INFINITY, f64::min);
    Ok((max_on <= 0.1 && min_off >= 0.5, format!("max on circle {max_on:.2e}, min at |l|=2 {min_off:.3}")))
}

fn foguel(seed: u64) -> Outcome {
    let mut radius = 0.0f64;
    for i in 0..10u64 {
        let phi = random_symbol((i % 5) as usize, trial_seed(seed, 9000 + i)).phi().clone();
        let eig = dense_spectrum(&foguel_hankel_section(&phi, 256)?)?;
        radius = radius.max(eig.iter().map(|l| l.norm()).fold(0.0, f64::max));
    }
    Ok((radius <= 1.0 + 1e-6, format!("max spectral radius {radius:.6}")))
}

/// Flag combinations the classification criteria allow.
pub fn allowed_combinations() -> Vec<Flags> {
    let f = |zero, compact, self_adjoint, positive_necessary, complex_symmetric| Flags {
        bounded: true,
        zero,
        compact,
        self_adjoint,
        positive_necessary,
        complex_symmetric,
    };
    let mut out = vec![f(true, true, true, true, true), f(false, true, false, false, true), f(false, true, true, true, true)];
    for (s, p, x) in [(false, false, false), (true, false, false), (true, true, false), (false, false, true), (true, false, true), (true, true, true)] {
        out.push(f(false, false, s, p, x));
    }
    out
}

/// Thirty hand-built symbols covering every allowed flag combination.
pub fn classification_battery() -> Vec<MatrixSymbol> {
    let z = RationalSymbol::z_pow;
    let zero = || RationalSymbol::zero();
    let cosine = lp(&[(-1, 1.0), (1, 1.0)]);
    let bump = lp(&[(-1, 0.5), (0, 2.0), (1, 0.5)]);
    let complex = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c64::new(0.0, 1.0)), (0, c(1.0))]));
    let g = |a, b, c, d| MatrixSymbol::gsio(a, b, c, d);
    vec![
        // zero
        g(zero(), zero(), zero(), zero()),
        g(zero(), z(-1), z(1), zero()),
        g(zero(), z(-3), lp(&[(0, 1.0), (2, -1.0)]), zero()),
        // compact, complex symmetric
        g(zero(), zero(), z(-1), zero()),
        g(zero(), z(2), zero(), zero()),
        g(zero(), z(1), z(-2), zero()),
        // compact, self-adjoint
        g(zero(), z(1), z(-1), zero()),
        g(zero(), lp(&[(2, 1.0), (0, 3.0)]), lp(&[(-2, 1.0), (1, 5.0)]), zero()),
        g(zero(), z(2), lp(&[(-2, 1.0), (1, 1.0)]), zero()),
        // no flags beyond boundedness
        g(z(1), zero(), zero(), 1.0.into()),
        g(complex.clone(), z(-1), zero(), cosine.clone()),
        g(z(2), z(1), z(-1), z(-1)),
        // self-adjoint
        g(1.0.into(), zero(), zero(), (-1.0).into()),
        g(cosine.clone(), z(1), z(-1), bump.clone()),
        g(bump.clone(), zero(), zero(), cosine.clone()),
        // self-adjoint, positive necessary
        g(1.0.into(), zero(), zero(), 2.0.into()),
        g(bump.clone(), z(1), z(-1), 1.0.into()),
        g(2.0.into(), z(2), z(-2), bump.clone()),
        // complex symmetric
        g(z(1), zero(), zero(), z(1)),
        g(complex.clone(), z(-2), zero(), complex.clone()),
        g(z(-1), zero(), z(-1), z(-1)),
        // self-adjoint, complex symmetric
        g(cosine.clone(), zero(), zero(), cosine.clone()),
        g(cosine.clone(), z(1), z(-1), cosine.clone()),
        g((-1.0).into(), z(3), z(-3), (-1.0).into()),
        // self-adjoint, positive necessary, complex symmetric
        g(1.0.into(), zero(), zero(), 1.0.into()),
        g(bump.clone(), zero(), zero(), bump.clone()),
        g(bump.clone(), z(1), z(-1), bump.clone()),
        g(3.0.into(), lp(&[(1, 1.0), (2, 1.0)]), lp(&[(-1, 1.0), (-2, 1.0)]), 3.0.into()),
        g(bump.clone(), zero(), z(2), bump.clone()),
        g(2.0.into(), z(-1), z(1), 2.0.into()),
    ]
}

/// Flags decided from sections alone; `positive_necessary` here means no
/// eigenvalue of the order-64 section is below `-1e-6`.
pub fn section_flags(h: &MatrixSymbol) -> Result<Flags> {
    let small = gsio_section(h, 16)?;
    let large = gsio_section(h, 32)?;
    let hermitian = |s: &FiniteSection| s.is_hermitian(0.0);
    let zero = small.data().max_abs() == 0.0;
    let rank = |s: &FiniteSection| numerical_rank(&s.to_dense(), 1e-10);
    let compact = rank(&small)? == rank(&large)?;
    let self_adjoint = hermitian(&small) && hermitian(&large);
    let complex_symmetric = v_basis_map(&small)?.data().sub(small.adjoint().data()).max_abs() == 0.0;
    let positive_necessary =
        self_adjoint && dense_spectrum(&gsio_section(h, 64)?)?.iter().all(|l| l.re >= -1e-6);
    Ok(Flags { bounded: true, zero, compact, self_adjoint, positive_necessary, complex_symmetric })
}

fn truth_table() -> Outcome {
    let allowed = allowed_combinations();
    let mut hit = vec![false; allowed.len()];
    let mut bad = Vec::new();
    for (i, h) in classification_battery().iter().enumerate() {
        let flags = classify(h).flags;
        match allowed.iter().position(|a| *a == flags) {
            Some(k) => hit[k] = true,
            None => bad.push(format!("case {i}: disallowed {flags:?}")),
        }
        let direct = section_flags(h)?;
        let exact = Flags { positive_necessary: flags.positive_necessary, ..direct };
        // positivity is only a necessary condition: a positive section forces the flag
        if exact != flags || (direct.positive_necessary && !flags.positive_necessary) {
            bad.push(format!("case {i}: classify {flags:?} vs sections {direct:?}"));
        }
        if flags.positive_necessary && !flags.self_adjoint {
            bad.push(format!("case {i}: positive without self-adjointness"));
        }
    }
    let missing = hit.iter().filter(|&&h| !h).count();
    Ok((
        bad.is_empty() && missing == 0,
        if bad.is_empty() { format!("30 cases, {} combinations hit", hit.len() - missing) } else { bad.join("; ") },
    ))
}
