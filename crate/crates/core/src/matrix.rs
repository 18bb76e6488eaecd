use std::fmt::Write as _;

use crate::poly::{Poly, Term, Vector};
use crate::ring::QuotientRing;

/// A matrix over `R`, stored by columns; each column is a vector of length `rows`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: Vec<Vector>,
}

impl Matrix {
    pub fn zero(rows: usize, ncols: usize) -> Matrix {
        Matrix { rows, cols: vec![Vector::zero(); ncols] }
    }

    pub fn identity(ring: &QuotientRing, n: usize) -> Matrix {
        let one = ring.one();
        Matrix { rows: n, cols: (0..n).map(|i| one.to_vector(i as u32)).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<Vector>) -> Matrix {
        debug_assert!(cols.iter().all(|c| c.max_position().map_or(true, |p| (p as usize) < rows)));
        Matrix { rows, cols }
    }

    pub fn from_rows(rows: &[Vec<Poly>], ncols: usize) -> Matrix {
        let mut cols = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let entries: Vec<Poly> = rows.iter().map(|r| r[j].clone()).collect();
            cols.push(Vector::from_entries(&entries));
        }
        Matrix { rows: rows.len(), cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[Vector] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &Vector {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        self.cols[j].component(i as u32)
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        let mut rows = vec![vec![Poly::zero(); self.ncols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, p) in c.to_entries(self.rows).into_iter().enumerate() {
                rows[i][j] = p;
            }
        }
        rows
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, ring: &QuotientRing, v: &Vector) -> Vector {
        let order = ring.order();
        let mut out = Vector::zero();
        for (t, c) in v.terms() {
            out = out.add_scaled(c, &t.mono, &self.cols[t.pos as usize], order);
        }
        ring.nf_vector(&out)
    }

    pub fn mul(&self, ring: &QuotientRing, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.rows, "matrix product shape mismatch");
        Matrix { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(ring, c)).collect() }
    }

    pub fn add(&self, ring: &QuotientRing, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        let order = ring.order();
        Matrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b, order)).collect() }
    }

    pub fn sub(&self, ring: &QuotientRing, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()));
        let order = ring.order();
        Matrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b, order)).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, ring: &QuotientRing, p: &Poly) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().map(|c| ring.scale_vector(c, p)).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        let mut cols: Vec<Vec<(Term, crate::field::Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (t, v) in c.terms() {
                cols[t.pos as usize].push((Term { pos: j as u32, mono: t.mono }, v.clone()));
            }
        }
        // columns are visited in increasing j, and each column's terms are sorted,
        // so every new column is already in position-over-term order
        Matrix {
            rows: self.ncols(),
            cols: cols.into_iter().map(|ts| Vector::from_sorted_terms(ts)).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Matrix { rows: self.rows, cols }
    }

    /// `[self ; other]`.
    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols(), other.ncols());
        let split = self.rows as u32;
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.concat(b, split)).collect(),
        }
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let top = self.hcat(&Matrix::zero(self.rows, other.ncols()));
        let bottom = Matrix::zero(other.rows, self.ncols()).hcat(other);
        top.vcat(&bottom)
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix { rows: self.rows, cols: idx.iter().map(|&j| self.cols[j].clone()).collect() }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        self.transpose().select_columns(idx).transpose()
    }

    pub fn push_column(&mut self, v: Vector) {
        self.cols.push(v);
    }

    pub fn normalize(&self, ring: &QuotientRing) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols.iter().map(|c| ring.nf_vector(c)).collect() }
    }

    /// Rows as `[[a, b], [c, d]]` in the ring's variable names.
    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut s = String::from("[");
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push('[');
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    s.push_str(", ");
                }
                let _ = write!(s, "{}", p.fmt_with(names));
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}
