use faer::Mat;
use num_complex::Complex64 as c64;
use rayon::prelude::*;

use super::dense::singular_values;
use crate::error::{GsioError, Result};
use crate::fft;
use crate::section::hankel_section;
use crate::symbol::{MatrixSymbol, RationalSymbol, SymbolRole};

const HULL_SAMPLES: usize = 1024;
const HULL_SLACK: f64 = 1e-9;
const QUOTIENT_TOL: f64 = 1e-10;
const QUOTIENT_MAX_SAMPLES: usize = 1 << 15;
const DENSE_HANKEL_LIMIT: usize = 1024;

fn top_singular(a: &Mat<c64>) -> Result<f64> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

/// Largest singular value of `hankel_section(g, N)`, i.e. `dist(g, H^inf)`
/// once `N` covers the co-analytic support.
pub fn hankel_distance(g: &RationalSymbol, n: usize) -> Result<f64> {
    let h = hankel_section(g, n)?;
    let data = h.data();
    let mut rows: Vec<usize> = data.triplets().map(|t| t.0).collect();
    let mut cols: Vec<usize> = data.triplets().map(|t| t.1).collect();
    rows.sort_unstable();
    rows.dedup();
    cols.sort_unstable();
    cols.dedup();
    if rows.is_empty() {
        return Ok(0.0);
    }
    top_singular(&data.select(&rows, &cols).to_dense())
}

/// Norm of the Hankel operator with co-analytic coefficients `c[m-1] = u^(-m)`.
fn hankel_norm_from_coanalytic(c: &[c64]) -> Result<f64> {
    let k = c.len();
    if k == 0 {
        return Ok(0.0);
    }
    // entry (m, j) = u^(-m-j-1) with m, j = 0..k-1
    let a = Mat::<c64>::from_fn(k, k, |m, j| if m + j < k { c[m + j] } else { c64::new(0.0, 0.0) });
    top_singular(&a)
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull of a finite point set (counter-clockwise, monotone chain).
#[derive(Clone, Debug)]
pub struct ConvexHull {
    vertices: Vec<c64>,
}

impl ConvexHull {
    pub fn new(points: &[c64]) -> Self {
        let mut p: Vec<(f64, f64)> = points.iter().map(|z| (z.re, z.im)).collect();
        p.sort_by(|a, b| a.partial_cmp(b).unwrap());
        p.dedup();
        if p.len() < 3 {
            return ConvexHull { vertices: p.into_iter().map(|(x, y)| c64::new(x, y)).collect() };
        }
        let mut lower: Vec<(f64, f64)> = Vec::new();
        for &q in &p {
            while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], q) <= 0.0 {
                lower.pop();
            }
            lower.push(q);
        }
        let mut upper: Vec<(f64, f64)> = Vec::new();
        for &q in p.iter().rev() {
            while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], q) <= 0.0 {
                upper.pop();
            }
            upper.push(q);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexHull { vertices: lower.into_iter().map(|(x, y)| c64::new(x, y)).collect() }
    }

    pub fn vertices(&self) -> &[c64] {
        &self.vertices
    }

    /// Euclidean distance from `z` to the hull (0 inside).
    pub fn distance(&self, z: c64) -> f64 {
        let v = &self.vertices;
        match v.len() {
            0 => f64::INFINITY,
            1 => (z - v[0]).norm(),
            2 => segment_distance(z, v[0], v[1]),
            n => {
                let inside = (0..n).all(|i| {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    cross((a.re, a.im), (b.re, b.im), (z.re, z.im)) >= 0.0
                });
                if inside {
                    0.0
                } else {
                    (0..n).map(|i| segment_distance(z, v[i], v[(i + 1) % n])).fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    pub fn contains(&self, z: c64, slack: f64) -> bool {
        self.distance(z) <= slack
    }
}

fn segment_distance(z: c64, a: c64, b: c64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// `(1 - dist(u, H^inf)^2)^(1/2)` for `u = (s - lambda)/|s - lambda|`, with
/// `inf |s - lambda|` over the sample grid.
pub fn unimodular_quotient_bound(s: &RationalSymbol, lambda: c64) -> Result<(f64, f64)> {
    let mut m = 256;
    loop {
        let samples = fft::sample(m, |z| s.value_at(z) - lambda);
        let min_mod = samples.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        if min_mod == 0.0 {
            return Err(GsioError::vanishes("s - lambda", 1.0));
        }
        let u: Vec<c64> = samples.iter().map(|v| v / v.norm()).collect();
        let c = fft::analyze(&u);
        let tail = (m / 4..=m / 2).map(|k| c[k].norm().max(c[m - k].norm())).fold(0.0, f64::max);
        if tail <= QUOTIENT_TOL {
            let neg: Vec<c64> = (1..m / 4).map(|k| c[fft::index_of_mode(-(k as i64), m)]).collect();
            let support = neg.iter().rposition(|v| v.norm() >= QUOTIENT_TOL).map_or(0, |p| p + 1);
            if support > DENSE_HANKEL_LIMIT {
                return Err(GsioError::TailNotConverged {
                    tolerance: QUOTIENT_TOL,
                    detail: format!("unimodular quotient needs {support} co-analytic modes"),
                });
            }
            let norm = hankel_norm_from_coanalytic(&neg[..support])?;
            return Ok(((1.0 - norm * norm).max(0.0).sqrt(), min_mod));
        }
        if 2 * m > QUOTIENT_MAX_SAMPLES {
            return Err(GsioError::TailNotConverged {
                tolerance: QUOTIENT_TOL,
                detail: format!("unimodular quotient tail {tail:e} at {m} samples"),
            });
        }
        m *= 2;
    }
}

/// Rectangular lattice `re_range x im_range` with `nre x nim` points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub nre: usize,
    pub nim: usize,
}

impl Lattice {
    pub fn points(&self) -> Vec<c64> {
        let step = |(a, b): (f64, f64), n: usize, i: usize| if n <= 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 };
        (0..self.nim)
            .flat_map(|j| (0..self.nre).map(move |i| c64::new(step(self.re, self.nre, i), step(self.im, self.nim, j))))
            .collect()
    }
}

/// Pointwise membership in `G1 u G2`.
#[derive(Clone, Debug)]
pub struct InclusionTester {
    pub delta: f64,
    hulls: [ConvexHull; 2],
    symbols: [RationalSymbol; 2],
}

/// Outcome at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub d1: Option<f64>,
    pub d2: Option<f64>,
    /// Some `d_i` could not be certified; the point is kept as a member.
    pub uncertified: bool,
}

impl InclusionTester {
    pub fn new(h: &MatrixSymbol, n: usize) -> Result<Self> {
        h.require_role(SymbolRole::GsioH)?;
        let reach = |s: &RationalSymbol| s.as_laurent().map_or(n, |l| n.max(l.neg_degree()).max(1));
        let phi_bar = h.phi().conj();
        let delta = hankel_distance(&phi_bar, reach(&phi_bar))?.min(hankel_distance(h.g(), reach(h.g()))?);
        let hull = |s: &RationalSymbol| ConvexHull::new(&fft::sample(HULL_SAMPLES, |z| s.value_at(z)));
        Ok(InclusionTester {
            delta,
            hulls: [hull(h.f()), hull(h.psi())],
            symbols: [h.f().clone(), h.psi().clone()],
        })
    }

    pub fn hull(&self, i: usize) -> &ConvexHull {
        &self.hulls[i]
    }

    pub fn hull_distance(&self, lambda: c64) -> f64 {
        self.hulls[0].distance(lambda).min(self.hulls[1].distance(lambda))
    }

    pub fn test(&self, lambda: c64) -> Membership {
        if self.hull_distance(lambda) <= HULL_SLACK {
            return Membership { member: true, d1: None, d2: None, uncertified: false };
        }
        let mut out = Membership { member: false, d1: None, d2: None, uncertified: false };
        for i in 0..2 {
            match unimodular_quotient_bound(&self.symbols[i], lambda) {
                Ok((d, min_mod)) => {
                    if d <= self.delta / min_mod + HULL_SLACK {
                        out.member = true;
                    }
                    if i == 0 {
                        out.d1 = Some(d);
                    } else {
                        out.d2 = Some(d);
                    }
                }
                Err(_) => {
                    out.uncertified = true;
                    out.member = true;
                }
            }
        }
        out
    }

    /// Membership of `lambda` in the region dilated by `eps`, probed at
    /// `lambda`, on the hulls' `eps`-neighbourhood and on a polar sub-lattice.
    pub fn contains_dilated(&self, lambda: c64, eps: f64) -> bool {
        if self.hull_distance(lambda) <= eps || self.test(lambda).member {
            return true;
        }
        (1..=4).any(|ring| {
            let rad = eps * ring as f64 / 4.0;
            (0..8 * ring).any(|k| {
                let p = lambda + c64::from_polar(rad, std::f64::consts::TAU * k as f64 / (8 * ring) as f64);
                self.test(p).member
            })
        })
    }
}

/// `G1 u G2` evaluated on a lattice.
#[derive(Clone, Debug)]
pub struct InclusionRegion {
    pub delta: f64,
    pub grid: Vec<c64>,
    pub indicator: Vec<bool>,
    pub d1: Vec<Option<f64>>,
    pub d2: Vec<Option<f64>>,
    pub uncertified: Vec<bool>,
}

pub fn inclusion_region(h: &MatrixSymbol, lattice: &Lattice, n: usize) -> Result<InclusionRegion> {
    let tester = InclusionTester::new(h, n)?;
    let grid = lattice.points();
    let results: Vec<Membership> = grid.par_iter().map(|&l| tester.test(l)).collect();
    Ok(InclusionRegion {
        delta: tester.delta,
        indicator: results.iter().map(|m| m.member).collect(),
        d1: results.iter().map(|m| m.d1).collect(),
        d2: results.iter().map(|m| m.d2).collect(),
        uncertified: results.iter().map(|m| m.uncertified).collect(),
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::LaurentSymbol;

    fn c(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    #[test]
    fn nehari_examples() {
        assert!((hankel_distance(&RationalSymbol::z_pow(-1), 1).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(hankel_distance(&RationalSymbol::z_pow(3), 8).unwrap(), 0.0);
        let s = RationalSymbol::from_laurent(LaurentSymbol::from_pairs([(1, c(1.0)), (-1, c(1.0))]));
        assert!((hankel_distance(&s, 4).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hull_of_square() {
        let pts = [c(0.0), c(1.0), c64::new(1.0, 1.0), c64::new(0.0, 1.0), c64::new(0.5, 0.5)];
        let h = ConvexHull::new(&pts);
        assert_eq!(h.vertices().len(), 4);
        assert!(h.contains(c64::new(0.3, 0.9), 0.0));
        assert!((h.distance(c64::new(2.0, 0.5)) - 1.0).abs() < 1e-15);
        let seg = ConvexHull::new(&[c(-1.0), c(1.0)]);
        assert!((seg.distance(c64::new(0.0, 2.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn quotient_of_constant_is_inner_free() {
        let (d, m) = unimodular_quotient_bound(&RationalSymbol::constant(2.0), c64::new(0.0, 1.0)).unwrap();
        assert!((d - 1.0).abs() < 1e-14);
        assert!((m - 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn trivial_region_is_union_of_hulls() {
        let z = RationalSymbol::z_pow(1);
        let h = MatrixSymbol::gsio(z.clone(), 0.0, 0.0, z.scale(c(0.5)).add(&RationalSymbol::constant(3.0)));
        let lat = Lattice { re: (-2.0, 4.0), im: (-1.5, 1.5), nre: 25, nim: 13 };
        let r = inclusion_region(&h, &lat, 16).unwrap();
        assert_eq!(r.delta, 0.0);
        for (l, &ind) in r.grid.iter().zip(&r.indicator) {
            let want = l.norm() <= 1.0 + 1e-6 || (l - c(3.0)).norm() <= 0.5 + 1e-6;
            // lattice points on the circles are within hull slack of the polygon only approximately
            if ((l.norm() - 1.0).abs() > 1e-2) && (((l - c(3.0)).norm() - 0.5).abs() > 1e-2) {
                assert_eq!(ind, want, "{l}");
            }
        }
    }

    #[test]
    fn disk_around_constant() {
        let s = 0.4;
        let zs = RationalSymbol::z_pow(1).scale(c(s));
        let h = MatrixSymbol::gsio(1.0, zs, RationalSymbol::z_pow(-1), 1.0);
        let t = InclusionTester::new(&h, 8).unwrap();
        assert!((t.delta - s).abs() < 1e-14);
        assert!(t.test(c(1.0 + 0.39)).member);
        assert!(t.test(c64::new(1.0, -0.39)).member);
        assert!(!t.test(c(1.0 + 0.41)).member);
        assert!(t.contains_dilated(c(1.44), 0.05));
        assert!(!t.contains_dilated(c(1.5), 0.05));
    }
}
