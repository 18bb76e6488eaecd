//! Lifting and syzygies over `R = S/I` through one tracked Gröbner basis.
//!
//! For tracked columns `a_1..a_q ⊂ S^r`, untracked columns `b_l` and the
//! ideal `I`, the basis of the span of `(a_j, e_j)`, `(b_l, 0)`, `(I e_i, 0)`
//! and `(0, I e_j)` in `S^{r+q}` under the eliminating module order gives
//! normal forms modulo `⟨a, b⟩ + I S^r` (elements with a head leading term),
//! explicit coefficients of membership, and the syzygies of the `a_j` modulo
//! `⟨b⟩ + I S^r` (elements with a tail leading term).

use crate::error::{Error, Result};
use crate::gb::Gb;
use crate::matrix::Matrix;
use crate::poly::Vector;
use crate::ring::QuotientRing;

#[derive(Clone, Debug)]
pub struct Lifter {
    head: usize,
    tracked: usize,
    tail_degrees: Vec<i32>,
    gb: Gb,
}

impl Lifter {
    pub fn new(
        ring: &QuotientRing,
        head_degrees: &[i32],
        tracked: &[Vector],
        tracked_degrees: &[i32],
        untracked: &[Vector],
    ) -> Result<Lifter> {
        if tracked.len() != tracked_degrees.len() {
            return Err(Error::Shape("one degree per tracked column is required".into()));
        }
        let r = head_degrees.len();
        let q = tracked.len();
        let mut degrees = head_degrees.to_vec();
        degrees.extend_from_slice(tracked_degrees);
        let one = ring.one();
        let mut gens: Vec<Vector> = Vec::with_capacity(q + untracked.len());
        for (j, a) in tracked.iter().enumerate() {
            gens.push(a.concat(&one.to_vector(j as u32), r as u32));
        }
        gens.extend(untracked.iter().cloned());
        gens.extend(ring.ideal_vectors(r, 0));
        gens.extend(ring.ideal_vectors(q, r as u32));
        let gb = Gb::compute(ring.poly_ring(), &degrees, &gens)?;
        Ok(Lifter { head: r, tracked: q, tail_degrees: tracked_degrees.to_vec(), gb })
    }

    /// Over `R`, lifts through the columns of `a` with the columns of `b` as
    /// extra free directions; `head_degrees` are the row degrees.
    pub fn for_matrix(
        ring: &QuotientRing,
        head_degrees: &[i32],
        a: &Matrix,
        a_degrees: &[i32],
        b: Option<&Matrix>,
    ) -> Result<Lifter> {
        let untracked: &[Vector] = b.map(|m| m.columns()).unwrap_or(&[]);
        Lifter::new(ring, head_degrees, a.columns(), a_degrees, untracked)
    }

    pub fn head_rank(&self) -> usize {
        self.head
    }

    pub fn tracked(&self) -> usize {
        self.tracked
    }

    fn split(&self, v: &Vector) -> (Vector, Vector) {
        let r = self.head as u32;
        let full = self.gb.reduce(v);
        (full.slice_positions(0, r), full.slice_positions(r, r + self.tracked as u32))
    }

    /// Normal form of `v` modulo the span of all columns and `I`.
    pub fn reduce(&self, v: &Vector) -> Vector {
        self.split(v).0
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coefficients `c` with `v ≡ Σ c_j a_j` modulo the untracked columns and `I`.
    pub fn lift(&self, v: &Vector) -> Option<Vector> {
        let (head, tail) = self.split(v);
        if head.is_zero() {
            Some(tail.neg())
        } else {
            None
        }
    }

    /// Lifts each column of `m`; fails if some column is outside the span.
    pub fn lift_matrix(&self, m: &Matrix) -> Result<Matrix> {
        let mut cols = Vec::with_capacity(m.ncols());
        for (j, c) in m.columns().iter().enumerate() {
            match self.lift(c) {
                Some(x) => cols.push(x),
                None => return Err(Error::NotInImage(format!("column {j}"))),
            }
        }
        Ok(Matrix::from_columns(self.tracked, cols))
    }

    /// A minimal homogeneous generating set of the syzygies of the tracked
    /// columns modulo the untracked ones and `I`, with their degrees.
    pub fn syzygies(&self, ring: &QuotientRing) -> Result<(Matrix, Vec<i32>)> {
        let r = self.head as u32;
        let q = self.tracked as u32;
        let mut cands: Vec<Vector> = self
            .gb
            .elements()
            .iter()
            .filter(|e| e.leading().map_or(false, |(t, _)| t.pos >= r))
            .map(|e| e.slice_positions(r, r + q))
            .collect();
        let degree = |v: &Vector| v.degree_in(&self.tail_degrees).ok().flatten().unwrap_or(i32::MAX);
        cands.sort_by_key(|v| degree(v));
        let fixed = ring.ideal_vectors(self.tracked, 0);
        let (_, min) = Gb::compute_tracking(ring.poly_ring(), &self.tail_degrees, &fixed, &cands)?;
        let cols: Vec<Vector> = min.iter().map(|&i| ring.nf_vector(&cands[i])).collect();
        let degs: Vec<i32> = cols.iter().map(|c| degree(c)).collect();
        Ok((Matrix::from_columns(self.tracked, cols), degs))
    }
}

/// Minimal generators of `{v ∈ R^q : A v = 0}` for a homogeneous `A` whose
/// column `j` has degree `col_degrees[j]` and row `i` degree `row_degrees[i]`.
pub fn syzygies(
    ring: &QuotientRing,
    a: &Matrix,
    row_degrees: &[i32],
    col_degrees: &[i32],
) -> Result<(Matrix, Vec<i32>)> {
    Lifter::for_matrix(ring, row_degrees, a, col_degrees, None)?.syzygies(ring)
}
