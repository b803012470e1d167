//! Uniform-grid transforms on the unit circle.
//!
//! Sample `j` of an `M`-point grid sits at `exp(2 pi i j / M)`. Coefficient
//! index `k < M/2` carries mode `k`, the remaining indices carry `k - M`.

use num_complex::Complex64 as c64;
use rustfft::FftPlanner;

pub fn grid_point(j: usize, m: usize) -> c64 {
    c64::from_polar(1.0, std::f64::consts::TAU * j as f64 / m as f64)
}

pub fn mode_of_index(k: usize, m: usize) -> i64 {
    if k < m / 2 {
        k as i64
    } else {
        k as i64 - m as i64
    }
}

pub fn index_of_mode(mode: i64, m: usize) -> usize {
    mode.rem_euclid(m as i64) as usize
}

/// Samples -> Fourier coefficients (normalized by `1/M`).
pub fn analyze(samples: &[c64]) -> Vec<c64> {
    let m = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Fourier coefficients (indexed as by [`analyze`]) -> samples.
pub fn synthesize(coeffs: &[c64]) -> Vec<c64> {
    let mut buf = coeffs.to_vec();
    FftPlanner::new().plan_fft_inverse(buf.len()).process(&mut buf);
    buf
}

pub fn sample<F: Fn(c64) -> c64>(m: usize, f: F) -> Vec<c64> {
    (0..m).map(|j| f(grid_point(j, m))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_recovers_modes() {
        let m = 16;
        let s = sample(m, |z| 2.0 * z * z + z.inv() * 3.0);
        let c = analyze(&s);
        assert!((c[index_of_mode(2, m)] - c64::new(2.0, 0.0)).norm() < 1e-14);
        assert!((c[index_of_mode(-1, m)] - c64::new(3.0, 0.0)).norm() < 1e-14);
        assert!(c[index_of_mode(0, m)].norm() < 1e-14);
        let back = synthesize(&c);
        for (a, b) in back.iter().zip(s.iter()) {
            assert!((a - b).norm() < 1e-13);
        }
        assert_eq!(mode_of_index(15, 16), -1);
        assert_eq!(index_of_mode(-1, 16), 15);
    }
}
