use faer::Mat;
use num_complex::Complex64 as c64;

const ZERO: c64 = c64::new(0.0, 0.0);

/// Compressed sparse row matrix of complex entries.
///
/// Column indices within a row are strictly increasing and stored values are
/// never exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<c64>,
}

impl CsrMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        CsrMatrix { nrows, ncols, indptr: vec![0; nrows + 1], indices: Vec::new(), values: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![c64::new(1.0, 0.0); n])
    }

    pub fn diagonal(d: &[c64]) -> Self {
        Self::from_triplets(d.len(), d.len(), d.iter().enumerate().map(|(i, &v)| (i, i, v)))
    }

    /// Duplicates are summed; resulting exact zeros are dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, c64)>) -> Self {
        let mut t: Vec<(usize, usize, c64)> = triplets.into_iter().collect();
        t.sort_unstable_by_key(|&(i, j, _)| (i, j));
        let mut indptr = vec![0usize; nrows + 1];
        let mut indices = Vec::with_capacity(t.len());
        let mut values: Vec<c64> = Vec::with_capacity(t.len());
        let mut last: Option<(usize, usize)> = None;
        for (i, j, v) in t {
            assert!(i < nrows && j < ncols, "triplet ({i},{j}) outside {nrows}x{ncols}");
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                if let Some((li, _)) = last {
                    if *values.last().unwrap() == ZERO {
                        values.pop();
                        indices.pop();
                        indptr[li + 1] -= 1;
                    }
                }
                indices.push(j);
                values.push(v);
                indptr[i + 1] += 1;
                last = Some((i, j));
            }
        }
        if let Some((li, _)) = last {
            if *values.last().unwrap() == ZERO {
                values.pop();
                indices.pop();
                indptr[li + 1] -= 1;
            }
        }
        for i in 0..nrows {
            indptr[i + 1] += indptr[i];
        }
        CsrMatrix { nrows, ncols, indptr, indices, values }
    }

    pub fn from_dense(m: &Mat<c64>) -> Self {
        let mut t = Vec::new();
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let v = m[(i, j)];
                if v != ZERO {
                    t.push((i, j, v));
                }
            }
        }
        Self::from_triplets(m.nrows(), m.ncols(), t)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, c64)> + '_ {
        let r = self.indptr[i]..self.indptr[i + 1];
        self.indices[r.clone()].iter().copied().zip(self.values[r].iter().copied())
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, c64)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        let r = self.indptr[i]..self.indptr[i + 1];
        match self.indices[r.clone()].binary_search(&j) {
            Ok(p) => self.values[r.start + p],
            Err(_) => ZERO,
        }
    }

    pub fn to_dense(&self) -> Mat<c64> {
        let mut m = Mat::<c64>::zeros(self.nrows, self.ncols);
        for (i, j, v) in self.triplets() {
            m[(i, j)] = v;
        }
        m
    }

    pub fn matvec(&self, x: &[c64]) -> Vec<c64> {
        assert_eq!(x.len(), self.ncols);
        (0..self.nrows).map(|i| self.row(i).map(|(j, v)| v * x[j]).sum()).collect()
    }

    pub fn matmul(&self, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!(self.ncols, other.nrows, "inner dimensions differ");
        let mut acc = vec![ZERO; other.ncols];
        let mut seen = vec![false; other.ncols];
        let mut touched = Vec::new();
        let mut indptr = vec![0usize; self.nrows + 1];
        let mut indices = Vec::new();
        let mut values = Vec::new();
        for i in 0..self.nrows {
            for (k, a) in self.row(i) {
                for (j, b) in other.row(k) {
                    if !seen[j] {
                        seen[j] = true;
                        touched.push(j);
                    }
                    acc[j] += a * b;
                }
            }
            touched.sort_unstable();
            for &j in &touched {
                if acc[j] != ZERO {
                    indices.push(j);
                    values.push(acc[j]);
                }
                acc[j] = ZERO;
                seen[j] = false;
            }
            touched.clear();
            indptr[i + 1] = indices.len();
        }
        CsrMatrix { nrows: self.nrows, ncols: other.ncols, indptr, indices, values }
    }

    pub fn lincomb(&self, a: c64, other: &CsrMatrix, b: c64) -> CsrMatrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shapes differ");
        let t = self.triplets().map(|(i, j, v)| (i, j, a * v)).chain(other.triplets().map(|(i, j, v)| (i, j, b * v)));
        CsrMatrix::from_triplets(self.nrows, self.ncols, t)
    }

    pub fn add(&self, other: &CsrMatrix) -> CsrMatrix {
        self.lincomb(c64::new(1.0, 0.0), other, c64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &CsrMatrix) -> CsrMatrix {
        self.lincomb(c64::new(1.0, 0.0), other, c64::new(-1.0, 0.0))
    }

    pub fn scale(&self, s: c64) -> CsrMatrix {
        CsrMatrix::from_triplets(self.nrows, self.ncols, self.triplets().map(|(i, j, v)| (i, j, s * v)))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CsrMatrix {
        CsrMatrix::from_triplets(self.ncols, self.nrows, self.triplets().map(|(i, j, v)| (j, i, v.conj())))
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> CsrMatrix {
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v = v.conj());
        out
    }

    /// `out[perm_r[i]][perm_c[j]] = self[i][j]`.
    pub fn permute(&self, perm_r: &[usize], perm_c: &[usize]) -> CsrMatrix {
        CsrMatrix::from_triplets(self.nrows, self.ncols, self.triplets().map(|(i, j, v)| (perm_r[i], perm_c[j], v)))
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> CsrMatrix {
        let mut col_map = vec![usize::MAX; self.ncols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let t = rows.iter().enumerate().flat_map(|(ni, &i)| {
            let col_map = &col_map;
            self.row(i).filter_map(move |(j, v)| (col_map[j] != usize::MAX).then(|| (ni, col_map[j], v)))
        });
        CsrMatrix::from_triplets(rows.len(), cols.len(), t.collect::<Vec<_>>())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest row sum of magnitudes.
    pub fn norm_inf(&self) -> f64 {
        (0..self.nrows).map(|i| self.row(i).map(|(_, v)| v.norm()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> c64 {
        c64::new(x, 0.0)
    }

    #[test]
    fn triplets_sum_and_drop_zeros() {
        let m = CsrMatrix::from_triplets(2, 3, [(0, 2, c(1.0)), (0, 2, c(-1.0)), (1, 0, c(2.0)), (1, 0, c(1.0)), (0, 1, c(4.0))]);
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 2), c(0.0));
        assert_eq!(m.get(1, 0), c(3.0));
        assert_eq!(m.get(0, 1), c(4.0));
    }

    #[test]
    fn product_matches_dense() {
        let a = CsrMatrix::from_triplets(3, 2, [(0, 0, c(1.0)), (1, 1, c64::new(0.0, 2.0)), (2, 0, c(3.0)), (2, 1, c(-1.0))]);
        let b = CsrMatrix::from_triplets(2, 3, [(0, 1, c(5.0)), (1, 2, c(1.0)), (1, 0, c64::new(1.0, 1.0))]);
        let p = a.matmul(&b).to_dense();
        let (ad, bd) = (a.to_dense(), b.to_dense());
        let q = &ad * &bd;
        for i in 0..3 {
            for j in 0..3 {
                assert!((p[(i, j)] - q[(i, j)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn adjoint_and_select() {
        let a = CsrMatrix::from_triplets(2, 2, [(0, 1, c64::new(1.0, 2.0))]);
        assert_eq!(a.adjoint().get(1, 0), c64::new(1.0, -2.0));
        let s = a.select(&[0], &[1]);
        assert_eq!(s.get(0, 0), c64::new(1.0, 2.0));
        assert_eq!(a.matvec(&[c(0.0), c(2.0)]), vec![c64::new(2.0, 4.0), c(0.0)]);
    }
}
