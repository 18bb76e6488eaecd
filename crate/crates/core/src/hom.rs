//! Degree-zero Hom spaces as finite-dimensional vector spaces, the subspace of
//! maps factoring through projectives, and stable isomorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::Dense;
use crate::matrix::Matrix;
use crate::module::{free_cover, DegreeBasis, Module, Morphism, PresentedModule};
use crate::poly::{Term, Vector};

/// `Hom(M, N)_0`: image of generator `j` lives in `N_{d_j}`.
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    blocks: Vec<DegreeBasis>,
    offsets: Vec<usize>,
    /// Matrices of a basis, in the same order as the rows of `coords`.
    pub basis: Vec<Matrix>,
}

fn unit_vector(t: &Term, field: crate::field::Field) -> Vector {
    Vector::term(*t, field.one())
}

impl HomSpace {
    pub fn new(source: &Module, target: &Module) -> HomSpace {
        let ring = source.ring();
        let field = ring.field();
        let blocks: Vec<DegreeBasis> =
            source.generator_degrees().iter().map(|&d| DegreeBasis::new(target, d)).collect();
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut dim = 0;
        for b in &blocks {
            offsets.push(dim);
            dim += b.len();
        }
        offsets.push(dim);
        // constraints: every relation of the source maps to zero
        let rel_bases: Vec<DegreeBasis> =
            source.relation_degrees().iter().map(|&c| DegreeBasis::new(target, c)).collect();
        let nrows: usize = rel_bases.iter().map(|b| b.len()).sum();
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(dim);
        for (j, b) in blocks.iter().enumerate() {
            for t in &b.terms {
                let tv = unit_vector(t, field);
                let mut col = Vec::with_capacity(nrows);
                for (k, rb) in rel_bases.iter().enumerate() {
                    let a = source.relations().entry(j, k);
                    let img = ring.scale_vector(&tv, &a);
                    col.extend(rb.coords(target, &img));
                }
                cols.push(col);
            }
        }
        let kernel = if nrows == 0 {
            (0..dim)
                .map(|i| {
                    let mut v = vec![field.zero(); dim];
                    v[i] = field.one();
                    v
                })
                .collect()
        } else {
            Dense::from_columns(field, nrows, &cols).nullspace()
        };
        let mut hs = HomSpace { source: source.clone(), target: target.clone(), blocks, offsets, basis: Vec::new() };
        hs.basis = kernel.iter().map(|v| hs.element(v)).collect();
        hs
    }

    /// Dimension of the ambient coordinate space `⊕ N_{d_j}`.
    pub fn ambient_dim(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a map given by its matrix, reduced in the target.
    pub fn coords(&self, m: &Matrix) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.ambient_dim());
        for (j, b) in self.blocks.iter().enumerate() {
            out.extend(b.coords(&self.target, m.column(j)));
        }
        out
    }

    pub fn element(&self, coords: &[Scalar]) -> Matrix {
        let cols = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, b)| b.element(&self.target, &coords[self.offsets[j]..self.offsets[j + 1]]))
            .collect();
        Matrix::from_columns(self.target.rank(), cols)
    }

    pub fn morphism(&self, m: Matrix) -> Result<Morphism> {
        Morphism::new(&self.source, &self.target, m)
    }

    /// Coordinates of the maps `M → F → N` through the free cover `F` of `N`;
    /// they span the maps factoring through projectives.
    pub fn projective_part(&self) -> ProjectivePart {
        let cover = free_cover(&self.target);
        let lifts = HomSpace::new(&self.source, cover.source());
        let spans = lifts.basis.iter().map(|h| self.coords(h)).collect();
        ProjectivePart { lifts, spans }
    }
}

pub struct ProjectivePart {
    /// `Hom(M, F)_0` with `F` the free cover of the target.
    pub lifts: HomSpace,
    /// Coordinates (in the target Hom space) of each lift composed with the cover.
    pub spans: Vec<Vec<Scalar>>,
}

impl ProjectivePart {
    pub fn rank(&self, field: crate::field::Field, len: usize) -> usize {
        crate::linalg::rank_of(field, len, &self.spans)
    }
}

/// Basis of `Hom(M, N)_d`, the maps raising degrees by `d`, as degree-zero
/// maps into `N(d)`.
pub fn hom_space(m: &Module, n: &Module, degree: i32) -> HomSpace {
    HomSpace::new(m, &n.twist(degree))
}

/// `dim Hom(M, N)_0 - dim P(M, N)_0`.
pub fn stable_hom_dim(m: &Module, n: &Module) -> usize {
    let hs = HomSpace::new(m, n);
    let p = hs.projective_part();
    hs.dim() - p.rank(m.ring().field(), hs.ambient_dim())
}

/// A lift `h: X → F` of `f` along the free cover `F → Y`, if any.
pub fn factors_through_projective(f: &Morphism) -> Option<Morphism> {
    let hs = HomSpace::new(f.source(), f.target());
    let field = f.ring().field();
    let p = hs.projective_part();
    let target = hs.coords(f.matrix());
    if target.iter().all(|c| c.is_zero()) {
        return Some(Morphism::zero(f.source(), &p.lifts.target));
    }
    if p.spans.is_empty() {
        return None;
    }
    let a = Dense::from_columns(field, hs.ambient_dim(), &p.spans);
    let x = a.solve(&target)?;
    let mut h = Matrix::zero(p.lifts.target.rank(), f.source().rank());
    let ring = f.ring();
    for (c, b) in x.iter().zip(&p.lifts.basis) {
        if !c.is_zero() {
            h = h.add(ring, &b.scale(ring, &ring.scalar(c.clone())));
        }
    }
    Some(Morphism::new(f.source(), &p.lifts.target, h).expect("lift of a degree-zero map"))
}

/// Do `f` and `g` agree modulo maps factoring through projectives?
pub fn stably_equal(f: &Morphism, g: &Morphism) -> bool {
    factors_through_projective(&f.sub(g)).is_some()
}

/// Some `g: Y → X` with `gf ≡ 1` and `fg ≡ 1` modulo projectives.
pub fn is_stable_isomorphism(f: &Morphism) -> Option<Morphism> {
    let x = f.source();
    let y = f.target();
    let ring = f.ring();
    let field = ring.field();
    let back = HomSpace::new(y, x);
    let on_x = HomSpace::new(x, x);
    let on_y = HomSpace::new(y, y);
    let px = on_x.projective_part();
    let py = on_y.projective_part();
    let nx = on_x.ambient_dim();
    let ny = on_y.ambient_dim();
    let len = nx + ny;
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    for g in &back.basis {
        let mut c = on_x.coords(&g.mul(ring, f.matrix()));
        c.extend(on_y.coords(&f.matrix().mul(ring, g)));
        cols.push(c);
    }
    for p in &px.spans {
        let mut c = p.clone();
        c.extend(std::iter::repeat(field.zero()).take(ny));
        cols.push(c);
    }
    for p in &py.spans {
        let mut c = vec![field.zero(); nx];
        c.extend(p.iter().cloned());
        cols.push(c);
    }
    let mut rhs = on_x.coords(&Matrix::identity(ring, x.rank()));
    rhs.extend(on_y.coords(&Matrix::identity(ring, y.rank())));
    if len == 0 {
        return Some(Morphism::zero(y, x));
    }
    if cols.is_empty() {
        return if rhs.iter().all(|c| c.is_zero()) { Some(Morphism::zero(y, x)) } else { None };
    }
    let sol = Dense::from_columns(field, len, &cols).solve(&rhs)?;
    let mut g = Matrix::zero(x.rank(), y.rank());
    for (c, b) in sol.iter().zip(&back.basis) {
        if !c.is_zero() {
            g = g.add(ring, &b.scale(ring, &ring.scalar(c.clone())));
        }
    }
    Some(Morphism::new(y, x, g).expect("combination of Hom basis elements"))
}

/// `Hom(M, N)_0 / P(M, N)_0` with a fixed set of representatives and a
/// canonical key for each class.
pub struct StableQuotient {
    pub space: HomSpace,
    /// Indices into `space.basis` whose classes form a basis of the quotient.
    pub reps: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl StableQuotient {
    pub fn new(source: &Module, target: &Module) -> StableQuotient {
        let space = HomSpace::new(source, target);
        let field = source.ring().field();
        let len = space.ambient_dim();
        let p = space.projective_part();
        let mut span = p.spans.clone();
        let mut r = crate::linalg::rank_of(field, len, &span);
        let mut reps = Vec::new();
        for (k, b) in space.basis.iter().enumerate() {
            span.push(space.coords(b));
            let r2 = crate::linalg::rank_of(field, len, &span);
            if r2 > r {
                reps.push(k);
                r = r2;
            } else {
                span.pop();
            }
        }
        let (rows, pivots) = if p.spans.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let mut d = Dense { field, rows: p.spans.clone(), ncols: len };
            let pivots = d.rref();
            d.rows.truncate(pivots.len());
            (d.rows, pivots)
        };
        StableQuotient { space, reps, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of `m` reduced modulo the maps through projectives; equal
    /// keys mean stably equal maps.
    pub fn key(&self, m: &Matrix) -> Vec<Scalar> {
        let mut v = self.space.coords(m);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a = &*a - &(&f * b);
                }
            }
        }
        v
    }

    /// The combination of representatives with the given coefficients.
    pub fn element(&self, coeffs: &[Scalar]) -> Matrix {
        let ring = self.space.source.ring();
        let mut m = Matrix::zero(self.space.target.rank(), self.space.source.rank());
        for (c, &k) in coeffs.iter().zip(&self.reps) {
            if !c.is_zero() {
                m = m.add(ring, &self.space.basis[k].scale(ring, &ring.scalar(c.clone())));
            }
        }
        m
    }

    /// Every coefficient vector over a finite field, if there are at most `cap`.
    pub fn enumerate(&self, cap: u64) -> Option<Vec<Vec<Scalar>>> {
        let field = self.space.source.ring().field();
        if !field.is_finite() {
            return None;
        }
        let p = field.characteristic() as u64;
        let d = self.dim();
        let total = p.checked_pow(d as u32).filter(|&t| t <= cap)?;
        let mut out = Vec::with_capacity(total as usize);
        for code in 0..total {
            let mut c = code;
            out.push(
                (0..d)
                    .map(|_| {
                        let s = field.from_i64((c % p) as i64);
                        c /= p;
                        s
                    })
                    .collect(),
            );
        }
        Some(out)
    }
}

/// Searches `Hom(X, Y)_0` for a stable isomorphism: exhaustively over a small
/// finite field, by seeded random combinations otherwise.
pub fn find_stable_isomorphism(x: &Module, y: &Module, seed: u64) -> Option<Morphism> {
    let field = x.ring().field();
    let q = StableQuotient::new(x, y);
    let try_coeffs = |coeffs: &[Scalar]| -> Option<Morphism> {
        let f = Morphism::new(x, y, q.element(coeffs)).ok()?;
        is_stable_isomorphism(&f).map(|_| f)
    };
    if let Some(all) = q.enumerate(4096) {
        return all.iter().find_map(|c| try_coeffs(c));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let coeffs: Vec<Scalar> = (0..q.dim()).map(|_| field.from_i64(rng.gen_range(-7..=7))).collect();
        if let Some(f) = try_coeffs(&coeffs) {
            return Some(f);
        }
    }
    None
}

/// `X ≈ Y` in the stable category, decided by [`find_stable_isomorphism`].
pub fn stably_isomorphic(x: &Module, y: &Module, seed: u64) -> bool {
    find_stable_isomorphism(x, y, seed).is_some()
}

/// The free module on the generators of `m`.
pub fn cover_module(m: &Module) -> Module {
    PresentedModule::free(m.ring(), m.generator_degrees().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::{QuotientRing, Ring};

    fn r1() -> Ring {
        QuotientRing::parse(Field::rationals(), &["x"], &["x^2"]).unwrap()
    }

    #[test]
    fn hom_dimensions() {
        let r = r1();
        let free = PresentedModule::free(&r, vec![0]);
        let k = PresentedModule::residue_field(&r);
        assert_eq!(HomSpace::new(&free, &free).dim(), 1);
        assert_eq!(HomSpace::new(&k, &k).dim(), 1);
        assert_eq!(hom_space(&k, &free, 1).dim(), 1);
        assert_eq!(hom_space(&k, &free, 0).dim(), 0);
    }

    #[test]
    fn projective_factorization() {
        let r = r1();
        let k = PresentedModule::residue_field(&r);
        assert!(factors_through_projective(&Morphism::identity(&k)).is_none());
        assert!(factors_through_projective(&Morphism::zero(&k, &k)).is_some());
        let free = PresentedModule::free(&r, vec![0]);
        let cover = Morphism::new(&free, &k, Matrix::identity(&r, 1)).unwrap();
        assert!(factors_through_projective(&cover).is_some());
        assert_eq!(stable_hom_dim(&k, &k), 1);
    }

    #[test]
    fn stable_isomorphisms() {
        let r = r1();
        let k = PresentedModule::residue_field(&r);
        assert!(is_stable_isomorphism(&Morphism::identity(&k)).is_some());
        let zero = PresentedModule::zero(&r);
        assert!(is_stable_isomorphism(&Morphism::zero(&k, &zero)).is_none());
        // k → k ⊕ R
        let rows = [vec![r.var(0)], vec![crate::poly::Poly::zero()]];
        let kr = PresentedModule::new(&r, vec![0, 0], Matrix::from_rows(&rows, 1)).unwrap();
        let incl = Morphism::new(&k, &kr, Matrix::from_rows(&[vec![r.one()], vec![crate::poly::Poly::zero()]], 1)).unwrap();
        assert!(is_stable_isomorphism(&incl).is_some());
        assert!(stably_isomorphic(&kr, &k, 0));
        assert!(!stably_isomorphic(&k, &zero, 0));
    }
}
