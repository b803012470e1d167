//! Finite sections of operators on `L^2`, `H^2` and their direct sums.
//!
//! A section is a matrix whose rows and columns are labelled by
//! `(component, mode)` pairs. The standard `L^2` grading of order `N` is
//! `z^0, ..., z^(N-1), z^-1, ..., z^-N`; the Hardy grading is `z^0, ..., z^(N-1)`.
//! Entries are stored sparsely and densified only for factorizations.

mod assembly;
mod extension;
mod sparse;

pub use assembly::{
    apply_v_conjugation, block_toeplitz_section, block_toeplitz_tall, dtt_symbol, dual_toeplitz_section,
    foguel_hankel_section, gsio_section, hankel_section, hardy_form_section, multiplication_section,
    toeplitz_section, u_matrix, v_basis_map, CoeffTable,
};
pub use extension::{extension_blocks, extension_identity_residual, ExtensionBlocks};
pub use sparse::CsrMatrix;

use std::collections::HashMap;

use faer::Mat;
use num_complex::Complex64 as c64;

use crate::error::{GsioError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub component: usize,
    pub mode: i64,
}

impl Label {
    pub const fn new(component: usize, mode: i64) -> Self {
        Label { component, mode }
    }
}

/// `z^0..z^(N-1), z^-1..z^-N` on the given component.
pub fn l2_grading(n: usize, component: usize) -> Vec<Label> {
    let n = n as i64;
    (0..n).chain((1..=n).map(|m| -m)).map(|m| Label::new(component, m)).collect()
}

/// `z^0..z^(N-1)` on the given component.
pub fn hardy_grading(n: usize, component: usize) -> Vec<Label> {
    (0..n as i64).map(|m| Label::new(component, m)).collect()
}

/// `z^-1..z^-N` on the given component.
pub fn coanalytic_grading(n: usize, component: usize) -> Vec<Label> {
    (1..=n as i64).map(|m| Label::new(component, -m)).collect()
}

/// `(z^0,0), (z^0,1), (z^1,0), ...` for `rows` modes of a 2-vector space.
pub fn interleaved_grading(rows: usize) -> Vec<Label> {
    (0..rows as i64).flat_map(|m| [Label::new(0, m), Label::new(1, m)]).collect()
}

pub(crate) fn index_map(labels: &[Label]) -> HashMap<Label, usize> {
    labels.iter().enumerate().map(|(i, &l)| (l, i)).collect()
}

/// A finite section with its basis grading.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSection {
    data: CsrMatrix,
    rows: Vec<Label>,
    cols: Vec<Label>,
    order: usize,
    interior_margin: usize,
}

impl FiniteSection {
    pub fn new(data: CsrMatrix, rows: Vec<Label>, cols: Vec<Label>, order: usize, interior_margin: usize) -> Self {
        assert_eq!(data.nrows(), rows.len());
        assert_eq!(data.ncols(), cols.len());
        FiniteSection { data, rows, cols, order, interior_margin }
    }

    pub fn identity(grading: Vec<Label>, order: usize) -> Self {
        let n = grading.len();
        FiniteSection::new(CsrMatrix::identity(n), grading.clone(), grading, order, 0)
    }

    /// Orthogonal projection onto the labels with the given mode sign.
    pub fn projection(grading: Vec<Label>, order: usize, analytic: bool) -> Self {
        let d: Vec<c64> = grading.iter().map(|l| c64::new(((l.mode >= 0) == analytic) as u8 as f64, 0.0)).collect();
        FiniteSection::new(CsrMatrix::diagonal(&d), grading.clone(), grading, order, 0)
    }

    pub fn data(&self) -> &CsrMatrix {
        &self.data
    }

    pub fn rows(&self) -> &[Label] {
        &self.rows
    }

    pub fn cols(&self) -> &[Label] {
        &self.cols
    }

    /// Row grading of a square section.
    pub fn grading(&self) -> &[Label] {
        &self.rows
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn interior_margin(&self) -> usize {
        self.interior_margin
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.interior_margin = margin;
        self
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols.len())
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> c64 {
        self.data.get(i, j)
    }

    pub fn to_dense(&self) -> Mat<c64> {
        self.data.to_dense()
    }

    /// Distance of a label from the truncation boundary.
    pub fn depth(&self, l: Label) -> usize {
        let n = self.order as i64;
        let d = if l.mode >= 0 { n - 1 - l.mode } else { n + l.mode };
        d.max(0) as usize
    }

    pub fn relabel(mut self, rows: Vec<Label>, cols: Vec<Label>) -> Self {
        assert_eq!(rows.len(), self.rows.len());
        assert_eq!(cols.len(), self.cols.len());
        self.rows = rows;
        self.cols = cols;
        self
    }

    fn check_same_shape(&self, other: &FiniteSection) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(GsioError::InvalidArgument("sections have different gradings".into()));
        }
        Ok(())
    }

    /// Matrix product; margins add.
    pub fn mul(&self, other: &FiniteSection) -> Result<FiniteSection> {
        if self.cols != other.rows {
            return Err(GsioError::InvalidArgument("inner gradings of the product differ".into()));
        }
        Ok(FiniteSection {
            data: self.data.matmul(&other.data),
            rows: self.rows.clone(),
            cols: other.cols.clone(),
            order: self.order.max(other.order),
            interior_margin: self.interior_margin + other.interior_margin,
        })
    }

    fn combine(&self, other: &FiniteSection, a: c64, b: c64) -> Result<FiniteSection> {
        self.check_same_shape(other)?;
        Ok(FiniteSection {
            data: self.data.lincomb(a, &other.data, b),
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            order: self.order.max(other.order),
            interior_margin: self.interior_margin.max(other.interior_margin),
        })
    }

    pub fn add(&self, other: &FiniteSection) -> Result<FiniteSection> {
        self.combine(other, c64::new(1.0, 0.0), c64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &FiniteSection) -> Result<FiniteSection> {
        self.combine(other, c64::new(1.0, 0.0), c64::new(-1.0, 0.0))
    }

    pub fn scale(&self, s: c64) -> FiniteSection {
        FiniteSection { data: self.data.scale(s), ..self.clone() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> FiniteSection {
        FiniteSection {
            data: self.data.adjoint(),
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            order: self.order,
            interior_margin: self.interior_margin,
        }
    }

    /// `self - lambda I` for a square section.
    pub fn shift(&self, lambda: c64) -> FiniteSection {
        let id = CsrMatrix::identity(self.rows.len());
        FiniteSection { data: self.data.lincomb(c64::new(1.0, 0.0), &id, -lambda), ..self.clone() }
    }

    pub fn interior_indices(&self, labels: &[Label], margin: usize) -> Vec<usize> {
        labels.iter().enumerate().filter(|(_, &l)| self.depth(l) >= margin).map(|(i, _)| i).collect()
    }

    /// The submatrix on rows and columns at depth `>= margin`.
    pub fn interior(&self, margin: usize) -> FiniteSection {
        let r = self.interior_indices(&self.rows, margin);
        let c = self.interior_indices(&self.cols, margin);
        FiniteSection {
            data: self.data.select(&r, &c),
            rows: r.iter().map(|&i| self.rows[i]).collect(),
            cols: c.iter().map(|&j| self.cols[j]).collect(),
            order: self.order,
            interior_margin: 0,
        }
    }

    /// Largest entry difference over rows and columns at depth `>= margin`.
    pub fn interior_max_diff(&self, other: &FiniteSection, margin: usize) -> Result<f64> {
        self.check_same_shape(other)?;
        let a = self.interior(margin);
        let b = FiniteSection { order: self.order, ..other.clone() }.interior(margin);
        Ok(a.data.sub(&b.data).max_abs())
    }

    /// 2x2 block section; block row `b` takes components shifted by `b * (max component + 1)`.
    pub fn blocks(grid: [[&FiniteSection; 2]; 2]) -> Result<FiniteSection> {
        let [[a, b], [c, d]] = grid;
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(GsioError::InvalidArgument("block gradings do not line up".into()));
        }
        let stride = [a, b, c, d]
            .iter()
            .flat_map(|s| s.rows.iter().chain(s.cols.iter()))
            .map(|l| l.component)
            .max()
            .unwrap_or(0)
            + 1;
        let lift = |ls: &[Label], blk: usize| -> Vec<Label> {
            ls.iter().map(|l| Label::new(l.component + blk * stride, l.mode)).collect()
        };
        let rows: Vec<Label> = lift(&a.rows, 0).into_iter().chain(lift(&c.rows, 1)).collect();
        let cols: Vec<Label> = lift(&a.cols, 0).into_iter().chain(lift(&b.cols, 1)).collect();
        let (r0, c0) = (a.rows.len(), a.cols.len());
        let t = [(a, 0, 0), (b, 0, c0), (c, r0, 0), (d, r0, c0)]
            .into_iter()
            .flat_map(|(s, ro, co)| s.data.triplets().map(move |(i, j, v)| (i + ro, j + co, v)))
            .collect::<Vec<_>>();
        Ok(FiniteSection {
            data: CsrMatrix::from_triplets(rows.len(), cols.len(), t),
            rows,
            cols,
            order: [a, b, c, d].iter().map(|s| s.order).max().unwrap(),
            interior_margin: [a, b, c, d].iter().map(|s| s.interior_margin).max().unwrap(),
        })
    }

    /// Exact Hermitian check on stored entries (tolerance `tol` on differences).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.rows == self.cols && self.data.sub(&self.data.adjoint()).max_abs() <= tol
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gradings() {
        let g = l2_grading(2, 0);
        let modes: Vec<i64> = g.iter().map(|l| l.mode).collect();
        assert_eq!(modes, vec![0, 1, -1, -2]);
        let s = FiniteSection::identity(g, 2);
        assert_eq!(s.depth(Label::new(0, 1)), 0);
        assert_eq!(s.depth(Label::new(0, 0)), 1);
        assert_eq!(s.depth(Label::new(0, -2)), 0);
        assert_eq!(s.depth(Label::new(0, -1)), 1);
        assert_eq!(interleaved_grading(2)[3], Label::new(1, 1));
    }

    #[test]
    fn block_assembly() {
        let i = FiniteSection::identity(l2_grading(2, 0), 2);
        let z = i.scale(c64::new(0.0, 0.0));
        let b = FiniteSection::blocks([[&i, &z], [&z, &i]]).unwrap();
        assert_eq!(b.shape(), (8, 8));
        assert_eq!(b.rows()[4], Label::new(1, 0));
        assert!(b.data().sub(&CsrMatrix::identity(8)).max_abs() == 0.0);
    }
}
