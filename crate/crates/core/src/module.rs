//! Finitely presented graded modules and degree-zero morphisms.
//!
//! `coker(A)` with generator degrees `d_i` and relation columns of degree
//! `c_j`: entry `(i, j)` of `A` is homogeneous of degree `c_j - d_i`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::gb::Gb;
use crate::matrix::Matrix;
use crate::monomial::Monomial;
use crate::poly::{Poly, Term, Vector};
use crate::ring::{QuotientRing, Ring};
use crate::syz::Lifter;

pub struct PresentedModule {
    ring: Ring,
    gens: Vec<i32>,
    rels: Matrix,
    rel_degrees: Vec<i32>,
    gb: OnceLock<Gb>,
    lifter: OnceLock<Lifter>,
    // differentials ∂_2, ∂_3, ... of the resolution of this presentation
    pub(crate) syz_cache: Mutex<Vec<crate::homology::Stage>>,
}

pub type Module = Arc<PresentedModule>;

impl fmt::Debug for PresentedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {} degrees {:?}", self.rels.fmt_with(self.ring.names()), self.gens)
    }
}

impl PresentedModule {
    /// `coker(rels)`; relation degrees are read off the columns.
    pub fn new(ring: &Ring, gens: Vec<i32>, rels: Matrix) -> Result<Module> {
        if rels.nrows() != gens.len() {
            return Err(Error::Shape(format!(
                "relation matrix has {} rows for {} generators",
                rels.nrows(),
                gens.len()
            )));
        }
        let rels = rels.normalize(ring);
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for c in rels.columns() {
            match c.degree_in(&gens)? {
                Some(d) => {
                    cols.push(c.clone());
                    degs.push(d);
                }
                None => {}
            }
        }
        Ok(Self::from_parts(ring, gens, Matrix::from_columns(rels.nrows(), cols), degs))
    }

    pub(crate) fn from_parts(ring: &Ring, gens: Vec<i32>, rels: Matrix, rel_degrees: Vec<i32>) -> Module {
        Arc::new(PresentedModule {
            ring: ring.clone(),
            gens,
            rels,
            rel_degrees,
            gb: OnceLock::new(),
            lifter: OnceLock::new(),
            syz_cache: Mutex::new(Vec::new()),
        })
    }

    /// Like [`PresentedModule::new`], with relation degrees given (needed for zero columns).
    pub fn with_relation_degrees(ring: &Ring, gens: Vec<i32>, rels: Matrix, rel_degrees: Vec<i32>) -> Result<Module> {
        let rels = rels.normalize(ring);
        for (c, &d) in rels.columns().iter().zip(&rel_degrees) {
            if let Some(e) = c.degree_in(&gens)? {
                if e != d {
                    return Err(Error::NotHomogeneous(format!("relation of degree {e} declared as {d}")));
                }
            }
        }
        let keep: Vec<usize> = (0..rels.ncols()).filter(|&j| !rels.column(j).is_zero()).collect();
        let degs = keep.iter().map(|&j| rel_degrees[j]).collect();
        Ok(Self::from_parts(ring, gens, rels.select_columns(&keep), degs))
    }

    pub fn free(ring: &Ring, degrees: Vec<i32>) -> Module {
        let n = degrees.len();
        Self::from_parts(ring, degrees, Matrix::zero(n, 0), Vec::new())
    }

    pub fn zero(ring: &Ring) -> Module {
        Self::free(ring, Vec::new())
    }

    /// `k = R/m`, presented by the row of variables.
    pub fn residue_field(ring: &Ring) -> Module {
        let row: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        let n = row.len();
        Self::new(ring, vec![0], Matrix::from_rows(&[row], n)).expect("variables are homogeneous")
    }

    /// `R/(gens)` generated in degree 0.
    pub fn cyclic(ring: &Ring, gens: &[Poly]) -> Result<Module> {
        let row = gens.to_vec();
        Self::new(ring, vec![0], Matrix::from_rows(&[row], gens.len()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generator_degrees(&self) -> &[i32] {
        &self.gens
    }

    pub fn relations(&self) -> &Matrix {
        &self.rels
    }

    pub fn relation_degrees(&self) -> &[i32] {
        &self.rel_degrees
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn num_relations(&self) -> usize {
        self.rel_degrees.len()
    }

    /// Basis of `im(rels) + I·R^p` in `S^p`.
    pub fn gb(&self) -> &Gb {
        self.gb.get_or_init(|| {
            let mut gens: Vec<Vector> = self.rels.columns().to_vec();
            gens.extend(self.ring.ideal_vectors(self.rank(), 0));
            Gb::compute(self.ring.poly_ring(), &self.gens, &gens).expect("relations are homogeneous")
        })
    }

    /// Lifts vectors of `im(rels)` to coefficients on the relations.
    pub fn lifter(&self) -> &Lifter {
        self.lifter.get_or_init(|| {
            Lifter::new(&self.ring, &self.gens, self.rels.columns(), &self.rel_degrees, &[])
                .expect("relations are homogeneous")
        })
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        self.gb().reduce(v)
    }

    pub fn is_zero_element(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        let one = self.ring.one();
        (0..self.rank()).all(|i| self.is_zero_element(&one.to_vector(i as u32)))
    }

    pub fn is_free_presentation(&self) -> bool {
        self.rels.is_zero()
    }

    /// Standard terms of degree `d`, a `k`-basis of `M_d`.
    pub fn standard_terms(&self, d: i32) -> Vec<Term> {
        let gb = self.gb();
        let mut out = Vec::new();
        for (i, &gd) in self.gens.iter().enumerate() {
            if d < gd {
                continue;
            }
            for m in Monomial::all_of_degree(self.ring.nvars(), (d - gd) as u32) {
                let t = Term { pos: i as u32, mono: m };
                if !gb.is_reducible(&t) {
                    out.push(t);
                }
            }
        }
        out
    }

    pub fn dim_in_degree(&self, d: i32) -> usize {
        self.standard_terms(d).len()
    }

    /// Lowest and highest generator degree.
    pub fn degree_span(&self) -> Option<(i32, i32)> {
        Some((*self.gens.iter().min()?, *self.gens.iter().max()?))
    }

    /// `k`-dimension when finite: requires `R` artinian or `M` of finite length.
    pub fn total_dimension(&self, cap: i32) -> Option<usize> {
        let (lo, _) = match self.degree_span() {
            None => return Some(0),
            Some(s) => s,
        };
        let mut total = 0;
        for d in lo..=lo + cap {
            let n = self.dim_in_degree(d);
            total += n;
            // past the generators, M_d = 0 forces M_{d+1} = m·M_d = 0
            if n == 0 && self.gens.iter().all(|&g| g <= d) {
                return Some(total);
            }
        }
        None
    }

    pub fn describe(&self) -> String {
        format!("coker {} degrees {:?}", self.rels.fmt_with(self.ring.names()), self.gens)
    }

    /// Same presentation with generator degrees shifted by `-s` (the twist `M(s)`).
    pub fn twist(self: &Module, s: i32) -> Module {
        let gens = self.gens.iter().map(|d| d - s).collect();
        let rd = self.rel_degrees.iter().map(|d| d - s).collect();
        Self::from_parts(&self.ring, gens, self.rels.clone(), rd)
    }
}

/// Coordinates of homogeneous elements of `M_d` on the standard-term basis.
pub struct DegreeBasis {
    pub terms: Vec<Term>,
    index: HashMap<Term, usize>,
}

impl DegreeBasis {
    pub fn new(m: &PresentedModule, d: i32) -> DegreeBasis {
        let terms = m.standard_terms(d);
        let index = terms.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        DegreeBasis { terms, index }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coordinates of an element already in normal form.
    pub fn coords(&self, m: &PresentedModule, v: &Vector) -> Vec<Scalar> {
        let f = m.ring().field();
        let mut out = vec![f.zero(); self.terms.len()];
        for (t, c) in m.reduce(v).terms() {
            let i = *self.index.get(t).expect("normal form term outside the degree basis");
            out[i] = c.clone();
        }
        out
    }

    pub fn element(&self, m: &PresentedModule, coords: &[Scalar]) -> Vector {
        let terms: Vec<(Term, Scalar)> = self
            .terms
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (*t, c.clone()))
            .collect();
        Vector::from_terms(terms, m.ring().order())
    }
}

/// A degree-zero homogeneous map, given on generators, with the witness
/// `G` such that `matrix · A_source = A_target · G`.
#[derive(Clone)]
pub struct Morphism {
    source: Module,
    target: Module,
    matrix: Matrix,
    witness: Matrix,
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} by {}", self.source, self.target, self.matrix.fmt_with(self.source.ring.names()))
    }
}

impl Morphism {
    pub fn new(source: &Module, target: &Module, matrix: Matrix) -> Result<Morphism> {
        let ring = source.ring();
        if matrix.nrows() != target.rank() || matrix.ncols() != source.rank() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{} but the modules have {} and {} generators",
                matrix.nrows(),
                matrix.ncols(),
                target.rank(),
                source.rank()
            )));
        }
        let matrix = matrix.normalize(ring);
        for (j, c) in matrix.columns().iter().enumerate() {
            if let Some(d) = c.degree_in(target.generator_degrees())? {
                if d != source.generator_degrees()[j] {
                    return Err(Error::NotHomogeneous(format!(
                        "generator {j} of degree {} is sent to degree {d}",
                        source.generator_degrees()[j]
                    )));
                }
            }
        }
        let image = matrix.mul(ring, source.relations());
        let witness = target
            .lifter()
            .lift_matrix(&image)
            .map_err(|e| Error::IllDefined(format!("relations are not sent to relations ({e})")))?;
        Ok(Morphism { source: source.clone(), target: target.clone(), matrix, witness })
    }

    /// Trusts the caller for the witness; checked in debug builds.
    pub fn from_parts(source: &Module, target: &Module, matrix: Matrix, witness: Matrix) -> Morphism {
        let ring = source.ring();
        let matrix = matrix.normalize(ring);
        let witness = witness.normalize(ring);
        debug_assert_eq!(
            matrix.mul(ring, source.relations()),
            target.relations().mul(ring, &witness),
            "bad morphism witness"
        );
        Morphism { source: source.clone(), target: target.clone(), matrix, witness }
    }

    pub fn identity(m: &Module) -> Morphism {
        let ring = m.ring();
        Morphism {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(ring, m.rank()),
            witness: Matrix::identity(ring, m.num_relations()),
        }
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zero(target.rank(), source.rank()),
            witness: Matrix::zero(target.num_relations(), source.num_relations()),
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn witness(&self) -> &Matrix {
        &self.witness
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &Morphism) -> Morphism {
        assert!(Arc::ptr_eq(&self.target, &g.source), "composing non-composable morphisms");
        let ring = self.ring();
        Morphism {
            source: self.source.clone(),
            target: g.target.clone(),
            matrix: g.matrix.mul(ring, &self.matrix),
            witness: g.witness.mul(ring, &self.witness),
        }
    }

    fn same_ends(&self, other: &Morphism) {
        assert!(
            Arc::ptr_eq(&self.source, &other.source) && Arc::ptr_eq(&self.target, &other.target),
            "morphisms have different ends"
        );
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        self.same_ends(other);
        let ring = self.ring();
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(ring, &other.matrix),
            witness: self.witness.add(ring, &other.witness),
        }
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.neg(),
            witness: self.witness.neg(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let ring = self.ring();
        let p = ring.scalar(c.clone());
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scale(ring, &p),
            witness: self.witness.scale(ring, &p),
        }
    }

    /// Image of a source element in the target, not reduced.
    pub fn apply(&self, v: &Vector) -> Vector {
        self.matrix.apply(self.ring(), v)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }

    pub fn equals(&self, other: &Morphism) -> bool {
        self.sub(other).is_zero()
    }

    /// The same map between the same presentations seen as new module values.
    pub fn retarget(&self, source: &Module, target: &Module) -> Morphism {
        Morphism { source: source.clone(), target: target.clone(), matrix: self.matrix.clone(), witness: self.witness.clone() }
    }
}

/// Free module on the generators of `m`, with the cover `F → m`.
pub fn free_cover(m: &Module) -> Morphism {
    let f = PresentedModule::free(m.ring(), m.generator_degrees().to_vec());
    let ring = m.ring();
    Morphism {
        source: f,
        target: m.clone(),
        matrix: Matrix::identity(ring, m.rank()),
        witness: Matrix::zero(m.num_relations(), 0),
    }
}

/// A minimal presentation together with mutually inverse isomorphisms.
#[derive(Clone, Debug)]
pub struct Minimal {
    pub module: Module,
    pub to_min: Morphism,
    pub from_min: Morphism,
}

fn drop_position(v: &Vector, i: u32) -> Vector {
    let terms: Vec<(Term, Scalar)> = v
        .terms()
        .iter()
        .filter(|(t, _)| t.pos != i)
        .map(|(t, c)| (Term { pos: if t.pos > i { t.pos - 1 } else { t.pos }, mono: t.mono }, c.clone()))
        .collect();
    Vector::from_sorted_terms(terms)
}

/// `v - (v_i / c) a` where `a_i = c` is a unit.
fn eliminate(ring: &QuotientRing, v: &Vector, a: &Vector, i: u32, cinv: &Scalar) -> Vector {
    let vi = v.component(i);
    if vi.is_zero() {
        return v.clone();
    }
    let f = vi.scale(&-cinv);
    let order = ring.order();
    let mut out = v.clone();
    for (m, c) in f.terms() {
        out = out.add_scaled(c, m, a, order);
    }
    ring.nf_vector(&out)
}

/// Keeps a minimal subset of relation columns, ordered by degree.
pub(crate) fn prune_relations(ring: &QuotientRing, gens: &[i32], rels: &Matrix, degs: &[i32]) -> (Matrix, Vec<i32>) {
    let mut order: Vec<usize> = (0..rels.ncols()).filter(|&j| !rels.column(j).is_zero()).collect();
    order.sort_by_key(|&j| degs[j]);
    let cands: Vec<Vector> = order.iter().map(|&j| rels.column(j).clone()).collect();
    let fixed = ring.ideal_vectors(gens.len(), 0);
    let (_, min) = Gb::compute_tracking(ring.poly_ring(), gens, &fixed, &cands).expect("homogeneous relations");
    let keep: Vec<usize> = min.iter().map(|&k| order[k]).collect();
    (rels.select_columns(&keep), keep.iter().map(|&j| degs[j]).collect())
}

/// Cancels unit entries of the relation matrix and prunes redundant relations.
pub fn minimalize(m: &Module) -> Minimal {
    let ring = m.ring().clone();
    let p = m.rank();
    let mut gens: Vec<i32> = m.generator_degrees().to_vec();
    let mut cols: Vec<Vector> = m.relations().columns().to_vec();
    let mut degs: Vec<i32> = m.relation_degrees().to_vec();
    // proj: columns = images of the original generators in the current ones
    let one = ring.one();
    let mut proj: Vec<Vector> = (0..p).map(|i| one.to_vector(i as u32)).collect();
    // which original generator each current generator is
    let mut kept: Vec<usize> = (0..p).collect();
    loop {
        let mut unit = None;
        'search: for (j, c) in cols.iter().enumerate() {
            for (t, s) in c.terms() {
                if t.mono.is_one() {
                    unit = Some((j, t.pos, s.clone()));
                    break 'search;
                }
            }
        }
        let Some((j, i, c)) = unit else { break };
        let a = cols.remove(j);
        degs.remove(j);
        let cinv = c.inv();
        for v in cols.iter_mut() {
            *v = drop_position(&eliminate(&ring, v, &a, i, &cinv), i);
        }
        for v in proj.iter_mut() {
            *v = drop_position(&eliminate(&ring, v, &a, i, &cinv), i);
        }
        gens.remove(i as usize);
        kept.remove(i as usize);
    }
    let r = gens.len();
    let rels = Matrix::from_columns(r, cols);
    let (rels, degs) = prune_relations(&ring, &gens, &rels, &degs);
    let min = PresentedModule::from_parts(&ring, gens, rels, degs);
    let proj = Matrix::from_columns(r, proj);
    let incl = Matrix::from_columns(p, kept.iter().map(|&k| one.to_vector(k as u32)).collect());
    let to_min = Morphism::new(m, &min, proj).expect("cancellation map is well defined");
    let from_min = Morphism::new(&min, m, incl).expect("inclusion map is well defined");
    Minimal { module: min, to_min, from_min }
}

/// Is the module free (projective), i.e. zero in the stable category?
pub fn is_stably_zero(m: &Module) -> bool {
    minimalize(m).module.relations().is_zero()
}

/// `Z / B` for column sets in a common free module with generator degrees `ambient`.
/// Generators are the columns of `z`; relations are the syzygies modulo `b`.
pub fn subquotient(ring: &Ring, ambient: &[i32], z: &Matrix, z_degrees: &[i32], b: &Matrix) -> Result<(Module, Lifter)> {
    let lifter = Lifter::for_matrix(ring, ambient, z, z_degrees, Some(b))?;
    let (rels, degs) = lifter.syzygies(ring)?;
    Ok((PresentedModule::from_parts(ring, z_degrees.to_vec(), rels, degs), lifter))
}

/// Kernel of `f`, minimally presented, with its inclusion.
pub fn kernel(f: &Morphism) -> Result<(Module, Morphism)> {
    let ring = f.ring();
    let x = f.source();
    let y = f.target();
    let pre = Lifter::for_matrix(ring, y.generator_degrees(), f.matrix(), x.generator_degrees(), Some(y.relations()))?;
    let (z, zd) = pre.syzygies(ring)?;
    let (k, _) = subquotient(ring, x.generator_degrees(), &z, &zd, x.relations())?;
    let witness = x.lifter().lift_matrix(&z.mul(ring, k.relations()))?;
    let incl = Morphism::from_parts(&k, x, z, witness);
    let min = minimalize(&k);
    let incl = min.from_min.then(&incl);
    Ok((min.module, incl))
}

/// Cokernel of `f` on the target's generators, with its projection.
pub fn cokernel(f: &Morphism) -> Result<(Module, Morphism)> {
    let ring = f.ring();
    let y = f.target();
    let rels = y.relations().hcat(f.matrix());
    let mut degs = y.relation_degrees().to_vec();
    degs.extend_from_slice(f.source().generator_degrees());
    let c = PresentedModule::with_relation_degrees(ring, y.generator_degrees().to_vec(), rels, degs)?;
    let proj = Morphism::new(y, &c, Matrix::identity(ring, y.rank()))?;
    Ok((c, proj))
}

/// `M* = Hom(M, R)` with the cocycle (functional) of each generator as a column.
#[derive(Clone, Debug)]
pub struct Dual {
    pub module: Module,
    pub cocycles: Matrix,
}

pub fn dual(m: &Module) -> Result<Dual> {
    let ring = m.ring();
    let neg_d: Vec<i32> = m.generator_degrees().iter().map(|d| -d).collect();
    let neg_c: Vec<i32> = m.relation_degrees().iter().map(|d| -d).collect();
    let at = m.relations().transpose();
    let (y, yd) = Lifter::for_matrix(ring, &neg_c, &at, &neg_d, None)?.syzygies(ring)?;
    let (rels, rd) = Lifter::for_matrix(ring, &neg_d, &y, &yd, None)?.syzygies(ring)?;
    Ok(Dual { module: PresentedModule::from_parts(ring, yd, rels, rd), cocycles: y })
}

/// Free module `R^m` and `t: M → R^m` built from the generators of `M*`;
/// `t*` is onto.
pub fn left_approximation(m: &Module) -> Result<Morphism> {
    let d = dual(m)?;
    let ring = m.ring();
    let degs: Vec<i32> = d.module.generator_degrees().iter().map(|e| -e).collect();
    let free = PresentedModule::free(ring, degs);
    let t = d.cocycles.transpose();
    Morphism::new(m, &free, t)
}

/// The canonical map `φ_M: M → M**`.
pub fn phi(m: &Module) -> Result<Morphism> {
    let ring = m.ring();
    let d1 = dual(m)?;
    let d2 = dual(&d1.module)?;
    let dd = d1.module.generator_degrees();
    let neg: Vec<i32> = dd.iter().map(|e| -e).collect();
    let lifter = Lifter::for_matrix(ring, &neg, &d2.cocycles, d2.module.generator_degrees(), None)?;
    let rows = d1.cocycles.transpose();
    let mat = lifter
        .lift_matrix(&rows)
        .map_err(|e| Error::Internal(format!("evaluation is not a cocycle of M** ({e})")))?;
    Morphism::new(m, &d2.module, mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn r1() -> Ring {
        QuotientRing::parse(Field::rationals(), &["x"], &["x^2"]).unwrap()
    }

    fn r2() -> Ring {
        QuotientRing::parse(Field::rationals(), &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap()
    }

    #[test]
    fn minimalize_cancels_units() {
        let r = QuotientRing::parse(Field::rationals(), &["x", "y"], &["x*y"]).unwrap();
        let one = PresentedModule::new(&r, vec![0], Matrix::from_rows(&[vec![r.one()]], 1)).unwrap();
        assert_eq!(minimalize(&one).module.rank(), 0);
        let bad = PresentedModule::new(&r, vec![0, 0], Matrix::from_rows(&[vec![r.var(0)], vec![r.one()]], 1));
        assert!(bad.is_err(), "inhomogeneous column must be rejected");
        // coker [[x, 0], [1, y]]: the second generator is -x times the first
        let rows = [vec![r.var(0), Poly::zero()], vec![r.one(), r.var(1)]];
        let m = PresentedModule::new(&r, vec![0, 1], Matrix::from_rows(&rows, 2)).unwrap();
        let min = minimalize(&m);
        assert_eq!(min.module.rank(), 1);
        assert!(min.module.relations().is_zero());
        assert!(min.to_min.then(&min.from_min).sub(&Morphism::identity(&m)).is_zero());
        let k = PresentedModule::residue_field(&r);
        assert_eq!(minimalize(&k).module.relations(), k.relations());
    }

    #[test]
    fn kernel_and_cokernel_of_multiplication() {
        let r = r1();
        let free = PresentedModule::free(&r, vec![0]);
        let free1 = PresentedModule::free(&r, vec![1]);
        let x = Morphism::new(&free1, &free, Matrix::from_rows(&[vec![r.var(0)]], 1)).unwrap();
        let (k, incl) = kernel(&x).unwrap();
        assert_eq!(k.rank(), 1);
        assert_eq!(k.relations().fmt_with(r.names()), "[[x]]");
        assert!(incl.then(&x).is_zero());
        let (c, _) = cokernel(&x).unwrap();
        assert_eq!(minimalize(&c).module.relations().fmt_with(r.names()), "[[x]]");
    }

    #[test]
    fn duals_of_residue_fields() {
        let k1 = PresentedModule::residue_field(&r1());
        let d = dual(&k1).unwrap();
        assert_eq!(d.module.rank(), 1);
        assert_eq!(minimalize(&d.module).module.dim_in_degree(1), 1);
        let k2 = PresentedModule::residue_field(&r2());
        let d2 = dual(&k2).unwrap();
        assert_eq!(d2.module.rank(), 2);
        let f = PresentedModule::free(&r2(), vec![0, 3]);
        assert_eq!(dual(&f).unwrap().module.generator_degrees(), &[-3, 0]);
    }

    #[test]
    fn phi_of_residue_field() {
        let k = PresentedModule::residue_field(&r1());
        let p = phi(&k).unwrap();
        let (ker, _) = kernel(&p).unwrap();
        assert!(ker.is_zero());
        let u = QuotientRing::parse(Field::rationals(), &["u"], &[]).unwrap();
        let ku = PresentedModule::residue_field(&u);
        let pu = phi(&ku).unwrap();
        assert!(pu.is_zero());
        assert_eq!(pu.target().rank(), 0);
    }

    #[test]
    fn ill_defined_maps_are_rejected() {
        let r = r1();
        let k = PresentedModule::residue_field(&r);
        let free = PresentedModule::free(&r, vec![0]);
        assert!(matches!(Morphism::new(&k, &free, Matrix::identity(&r, 1)), Err(Error::IllDefined(_))));
        assert!(Morphism::new(&free, &k, Matrix::identity(&r, 1)).is_ok());
    }
}
