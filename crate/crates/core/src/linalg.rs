//! Dense linear algebra over the coefficient field.

use crate::field::{Field, Scalar};

/// Row-major dense matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub field: Field,
    pub rows: Vec<Vec<Scalar>>,
    pub ncols: usize,
}

impl Dense {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Dense {
        Dense { field, rows: vec![vec![field.zero(); ncols]; nrows], ncols }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, nrows: usize, cols: &[Vec<Scalar>]) -> Dense {
        let mut m = Dense::zero(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.rows[i][j] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inv();
            for v in self.rows[r].iter_mut() {
                *v = &*v * &inv;
            }
            let pivot_row = self.rows[r].clone();
            for i in 0..self.rows.len() {
                if i != r && !self.rows[i][c].is_zero() {
                    let f = self.rows[i][c].clone();
                    for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                        if !pv.is_zero() {
                            *v = &*v - &(&f * pv);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.ncols];
            v[free] = self.field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&m.rows[r][free];
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let mut aug = self.clone();
        for (row, v) in aug.rows.iter_mut().zip(b) {
            row.push(v.clone());
        }
        aug.ncols += 1;
        let pivots = aug.rref();
        if pivots.last() == Some(&self.ncols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.ncols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.rows[r][self.ncols].clone();
        }
        Some(x)
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(field: Field, len: usize, vecs: &[Vec<Scalar>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    Dense::from_columns(field, len, vecs).rank()
}

/// Indices of a maximal linearly independent subfamily, chosen greedily.
pub fn independent_subset(field: Field, len: usize, vecs: &[Vec<Scalar>]) -> Vec<usize> {
    Dense::from_columns(field, len, vecs).rref()
}
