//! Resolutions, syzygy and transpose modules, Ext into the ring, grade and
//! the torsionfree conditions.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Dense;
use crate::matrix::Matrix;
use crate::module::{minimalize, subquotient, DegreeBasis, Minimal, Module, PresentedModule};
use crate::poly::Vector;
use crate::ring::Ring;
use crate::syz::Lifter;

#[derive(Clone, Debug)]
pub(crate) struct Stage {
    diff: Matrix,
    degrees: Vec<i32>,
    lifter: Arc<OnceLock<Lifter>>,
}

/// An initial segment `F_L → … → F_1 → F_0` of a graded free resolution.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: Module,
    degrees: Vec<Vec<i32>>,
    diffs: Vec<Matrix>,
    lifters: Vec<Arc<OnceLock<Lifter>>>,
}

impl Resolution {
    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    /// Generator degrees of `F_i`.
    pub fn degrees(&self, i: usize) -> &[i32] {
        &self.degrees[i]
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees[i].len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    /// `∂_i: F_i → F_{i-1}` for `i ≥ 1`.
    pub fn diff(&self, i: usize) -> &Matrix {
        &self.diffs[i - 1]
    }

    /// Lifts through the columns of `∂_i`.
    pub fn lifter(&self, i: usize) -> &Lifter {
        self.lifters[i - 1].get_or_init(|| {
            Lifter::for_matrix(self.module.ring(), &self.degrees[i - 1], &self.diffs[i - 1], &self.degrees[i], None)
                .expect("homogeneous differential")
        })
    }

    /// Checks `∂_i ∂_{i+1} = 0` and, optionally, that no entry is a unit.
    pub fn verify(&self, minimal: bool) -> bool {
        let ring = self.module.ring();
        for i in 1..self.length() {
            if !self.diff(i).mul(ring, self.diff(i + 1)).is_zero() {
                return false;
            }
        }
        if minimal {
            for d in &self.diffs {
                if d.columns().iter().any(|c| c.terms().iter().any(|(t, _)| t.mono.is_one())) {
                    return false;
                }
            }
        }
        true
    }
}

/// Resolution of the presentation as stored: `F_0` on the generators,
/// `∂_1` the relation matrix, minimal syzygies afterwards.
pub fn resolve_presentation(m: &Module, length: usize) -> Result<Resolution> {
    let ring = m.ring();
    let mut cache = m.syz_cache.lock().expect("resolution cache poisoned");
    if cache.is_empty() && length >= 1 {
        cache.push(Stage {
            diff: m.relations().clone(),
            degrees: m.relation_degrees().to_vec(),
            lifter: Arc::new(OnceLock::new()),
        });
    }
    while cache.len() < length {
        let prev_deg = if cache.len() >= 2 { cache[cache.len() - 2].degrees.clone() } else { m.generator_degrees().to_vec() };
        let last = cache.last().unwrap();
        let lifter = last.lifter.get_or_init(|| {
            Lifter::for_matrix(ring, &prev_deg, &last.diff, &last.degrees, None).expect("homogeneous differential")
        });
        let (s, d) = lifter.syzygies(ring)?;
        cache.push(Stage { diff: s, degrees: d, lifter: Arc::new(OnceLock::new()) });
    }
    let mut degrees = vec![m.generator_degrees().to_vec()];
    let mut diffs = Vec::new();
    let mut lifters = Vec::new();
    for st in cache.iter().take(length) {
        degrees.push(st.degrees.clone());
        diffs.push(st.diff.clone());
        lifters.push(st.lifter.clone());
    }
    Ok(Resolution { module: m.clone(), degrees, diffs, lifters })
}

/// Minimal graded free resolution of `M` (of its minimal presentation).
pub fn resolve(m: &Module, length: usize) -> Result<Resolution> {
    let min = minimalize(m);
    resolve_presentation(&min.module, length)
}

/// `Ω^n M = coker ∂_{n+1}` on `F_n`, using the resolution of the stored presentation.
pub fn syzygy_of_presentation(m: &Module, n: usize) -> Result<Module> {
    if n == 0 {
        return Ok(m.clone());
    }
    let res = resolve_presentation(m, n + 1)?;
    Ok(PresentedModule::from_parts(
        m.ring(),
        res.degrees(n).to_vec(),
        res.diff(n + 1).clone(),
        res.degrees(n + 1).to_vec(),
    ))
}

/// Minimal `Ω^n M`.
pub fn syzygy(m: &Module, n: usize) -> Result<Module> {
    let min = minimalize(m).module;
    if n == 0 {
        return Ok(min);
    }
    let s = syzygy_of_presentation(&min, n)?;
    Ok(minimalize(&s).module)
}

/// `coker(A^T)` for the stored presentation `A`, zero columns kept so that
/// relation indices match the original generators.
pub fn transpose_presentation(m: &Module) -> Module {
    let gens: Vec<i32> = m.relation_degrees().iter().map(|c| -c).collect();
    let rd: Vec<i32> = m.generator_degrees().iter().map(|d| -d).collect();
    PresentedModule::from_parts(m.ring(), gens, m.relations().transpose(), rd)
}

/// `Tr M` from the minimal presentation, minimalized.
pub fn transpose(m: &Module) -> Module {
    let min = minimalize(m).module;
    minimalize(&transpose_presentation(&min)).module
}

/// `Ext^i(M, R) = ker ∂_{i+1}^T / im ∂_i^T` with cocycle representatives.
#[derive(Clone, Debug)]
pub struct ExtModule {
    pub i: usize,
    /// Minimal presentation of the Ext module.
    pub module: Module,
    /// Cocycle in `F_i^*` for each generator of `module`.
    pub cocycles: Matrix,
    /// Generator degrees of `F_i^*`.
    pub ambient: Vec<i32>,
    lifter: Lifter,
    to_min: Matrix,
}

impl ExtModule {
    /// The class of a cocycle, as an element of `module`; `None` if `z` is not a cocycle.
    pub fn class_of(&self, z: &Vector) -> Option<Vector> {
        let c = self.lifter.lift(z)?;
        Some(self.to_min.apply(self.module.ring(), &c))
    }

    pub fn is_zero(&self) -> bool {
        self.module.rank() == 0
    }
}

pub fn ext(m: &Module, i: usize) -> Result<ExtModule> {
    let ring = m.ring();
    let res = resolve_presentation(m, i + 1)?;
    ext_from_resolution(ring, &res, i)
}

pub(crate) fn ext_from_resolution(ring: &Ring, res: &Resolution, i: usize) -> Result<ExtModule> {
    let neg = |v: &[i32]| v.iter().map(|d| -d).collect::<Vec<i32>>();
    let ambient = neg(res.degrees(i));
    let next = neg(res.degrees(i + 1));
    let dt = res.diff(i + 1).transpose();
    let (z, zd) = Lifter::for_matrix(ring, &next, &dt, &ambient, None)?.syzygies(ring)?;
    let b = if i == 0 { Matrix::zero(ambient.len(), 0) } else { res.diff(i).transpose() };
    let (e, lifter) = subquotient(ring, &ambient, &z, &zd, &b)?;
    let Minimal { module, to_min, from_min } = minimalize(&e);
    let cocycles = z.mul(ring, from_min.matrix());
    Ok(ExtModule { i, module, cocycles, ambient, lifter, to_min: to_min.matrix().clone() })
}

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GradeValue {
    Finite(usize),
    Infinite,
}

impl GradeValue {
    pub fn at_least(&self, n: usize) -> bool {
        match self {
            GradeValue::Finite(g) => *g >= n,
            GradeValue::Infinite => true,
        }
    }
}

impl fmt::Display for GradeValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeValue::Finite(g) => write!(f, "{g}"),
            GradeValue::Infinite => write!(f, "inf"),
        }
    }
}

/// `inf{i : Ext^i(M, R) ≠ 0}`, searched up to `dim R`.
pub fn grade(m: &Module) -> Result<GradeValue> {
    let min = minimalize(m).module;
    if min.rank() == 0 {
        return Ok(GradeValue::Infinite);
    }
    let dim = m.ring().dim();
    for i in 0..=dim {
        if !ext(&min, i)?.is_zero() {
            return Ok(GradeValue::Finite(i));
        }
    }
    Err(Error::Internal(format!("nonzero module with Ext^i = 0 for all i <= dim R = {dim}")))
}

/// Depth of `R`, as the grade of the residue field.
pub fn depth_ring(ring: &Ring) -> Result<usize> {
    match grade(&PresentedModule::residue_field(ring))? {
        GradeValue::Finite(g) => Ok(g),
        GradeValue::Infinite => Err(Error::Internal("residue field is zero".into())),
    }
}

/// `Ext^i(Tr M, R) = 0` for `1 ≤ i ≤ n`.
pub fn is_n_torsionfree(m: &Module, n: usize) -> Result<bool> {
    if n == 0 {
        return Ok(true);
    }
    let tr = transpose(m);
    for i in 1..=n {
        if !ext(&tr, i)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ext^i(M,R) = 0` for `1 ≤ i ≤ m` and `Ext^j(Tr M,R) = 0` for `1 ≤ j ≤ n`.
pub fn class_gmn(m: &Module, mm: usize, n: usize) -> Result<bool> {
    let min = minimalize(m).module;
    for i in 1..=mm {
        if !ext(&min, i)?.is_zero() {
            return Ok(false);
        }
    }
    is_n_torsionfree(&min, n)
}

/// Whether every variable has a pure power among the leading terms at each position.
pub fn has_finite_length(m: &Module) -> bool {
    let gb = m.gb();
    let nv = m.ring().nvars();
    let lts = gb.leading_terms();
    (0..m.rank() as u32).all(|pos| {
        (0..nv).all(|v| {
            lts.iter().any(|t| t.pos == pos && (t.mono.support() & !(1u32 << v)) == 0)
        })
    })
}

/// Upper bound on the degrees scanned when a module has finite length.
const LENGTH_SCAN: i32 = 64;

/// `k`-dimension of a finite length module.
pub fn length(m: &Module) -> Option<usize> {
    if !has_finite_length(m) {
        return None;
    }
    m.total_dimension(LENGTH_SCAN)
}

/// Graded pieces of a finite length module, used for brute-force enumeration.
struct Pieces {
    degrees: Vec<i32>,
    bases: Vec<DegreeBasis>,
}

impl Pieces {
    fn new(m: &Module) -> Pieces {
        let (lo, _) = m.degree_span().unwrap_or((0, 0));
        let mut degrees = Vec::new();
        let mut bases = Vec::new();
        for d in lo..=lo + LENGTH_SCAN {
            let b = DegreeBasis::new(m, d);
            let past = m.generator_degrees().iter().all(|&g| g <= d);
            if b.is_empty() && past {
                break;
            }
            if !b.is_empty() {
                degrees.push(d);
                bases.push(b);
            }
        }
        Pieces { degrees, bases }
    }
}

/// A graded submodule as row-reduced spanning sets per graded piece.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct SubSpan(Vec<Vec<Vec<u32>>>);

fn canonical(field: crate::field::Field, len: usize, vecs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut d = Dense { field, rows: vecs.to_vec(), ncols: len };
    let r = d.rref().len();
    d.rows.truncate(r);
    d.rows
}

/// Decides `s.grade M ≥ n` by enumerating every graded submodule of `M`.
/// Requires a prime field, finite length and `dim_k M ≤ cap`.
pub fn sgrade_bruteforce(m: &Module, n: usize, cap: usize) -> Result<bool> {
    let ring = m.ring();
    let field = ring.field();
    if !field.is_finite() {
        return Err(Error::Hypothesis("s.grade enumeration needs a finite field".into()));
    }
    let m = minimalize(m).module;
    let total = length(&m).ok_or_else(|| Error::Hypothesis("module does not have finite length".into()))?;
    if total > cap {
        return Err(Error::CapExceeded(format!("module has dimension {total} > {cap}")));
    }
    if total == 0 {
        return Ok(true);
    }
    let pieces = Pieces::new(&m);
    let p = field.characteristic();
    let key = |span: &Vec<Vec<Vec<Scalar>>>| {
        SubSpan(span.iter().map(|vs| vs.iter().map(|v| v.iter().map(|s| s.residue().unwrap()).collect()).collect()).collect())
    };
    // every homogeneous element of M
    let mut elements: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for (k, b) in pieces.bases.iter().enumerate() {
        let len = b.len();
        let count = (p as usize).pow(len as u32);
        for code in 1..count {
            let mut c = code;
            let v: Vec<Scalar> = (0..len)
                .map(|_| {
                    let s = field.from_i64((c % p as usize) as i64);
                    c /= p as usize;
                    s
                })
                .collect();
            elements.push((k, v));
        }
    }
    let closure = |span: &Vec<Vec<Vec<Scalar>>>, add: (usize, Vec<Scalar>)| -> Vec<Vec<Vec<Scalar>>> {
        let mut span = span.clone();
        let mut todo = vec![add];
        while let Some((k, v)) = todo.pop() {
            let len = pieces.bases[k].len();
            let before = span[k].len();
            let mut vs = span[k].clone();
            vs.push(v.clone());
            let can = canonical(field, len, &vs);
            if can.len() == before {
                continue;
            }
            span[k] = can;
            let elt = pieces.bases[k].element(&m, &v);
            let d = pieces.degrees[k];
            if let Some(k2) = pieces.degrees.iter().position(|&e| e == d + 1) {
                for x in 0..ring.nvars() {
                    let w = ring.scale_vector(&elt, &ring.var(x));
                    let c = pieces.bases[k2].coords(&m, &w);
                    if c.iter().any(|s| !s.is_zero()) {
                        todo.push((k2, c));
                    }
                }
            }
        }
        span
    };
    let empty: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); pieces.bases.len()];
    let mut seen = std::collections::BTreeSet::new();
    seen.insert(key(&empty));
    let mut frontier = vec![empty];
    let mut subs: Vec<Vec<Vec<Vec<Scalar>>>> = Vec::new();
    while let Some(s) = frontier.pop() {
        for e in &elements {
            let t = closure(&s, e.clone());
            if seen.insert(key(&t)) {
                frontier.push(t.clone());
                subs.push(t);
            }
        }
    }
    for s in subs {
        let mut cols = Vec::new();
        let mut degs = Vec::new();
        for (k, vs) in s.iter().enumerate() {
            for v in vs {
                cols.push(pieces.bases[k].element(&m, v));
                degs.push(pieces.degrees[k]);
            }
        }
        let rank = m.rank();
        let z = Matrix::from_columns(rank, cols);
        let (sub, _) = subquotient(ring, m.generator_degrees(), &z, &degs, m.relations())?;
        if !grade(&sub)?.at_least(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::QuotientRing;

    fn ring(vars: &[&str], ideal: &[&str]) -> Ring {
        QuotientRing::parse(Field::rationals(), vars, ideal).unwrap()
    }

    #[test]
    fn resolutions_of_residue_fields() {
        let r = ring(&["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        let res = resolve(&k, 3).unwrap();
        assert_eq!(res.ranks(), vec![1, 1, 1, 1]);
        assert!(res.verify(true));
        let r2 = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let res2 = resolve(&PresentedModule::residue_field(&r2), 2).unwrap();
        assert_eq!(res2.ranks(), vec![1, 2, 4]);
        let f = PresentedModule::free(&r2, vec![0, 1]);
        assert_eq!(resolve(&f, 2).unwrap().ranks(), vec![2, 0, 0]);
    }

    #[test]
    fn ext_dimensions() {
        let r = ring(&["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        assert!(ext(&k, 1).unwrap().is_zero());
        let r2 = ring(&["x", "y"], &["x^2", "x*y", "y^2"]);
        let k2 = PresentedModule::residue_field(&r2);
        assert_eq!(length(&ext(&k2, 1).unwrap().module), Some(3));
    }

    #[test]
    fn grades_and_depths() {
        let r = ring(&["x"], &["x^2"]);
        assert_eq!(grade(&PresentedModule::residue_field(&r)).unwrap(), GradeValue::Finite(0));
        assert_eq!(grade(&PresentedModule::zero(&r)).unwrap(), GradeValue::Infinite);
        let u = ring(&["u"], &[]);
        assert_eq!(grade(&PresentedModule::residue_field(&u)).unwrap(), GradeValue::Finite(1));
        assert_eq!(depth_ring(&u).unwrap(), 1);
        assert_eq!(depth_ring(&r).unwrap(), 0);
        assert_eq!(depth_ring(&ring(&["x", "y"], &["x*y"])).unwrap(), 1);
    }

    #[test]
    fn transposes() {
        let r = ring(&["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        let t = transpose(&k);
        assert_eq!(t.relations().fmt_with(r.names()), "[[x]]");
        let h = ring(&["x", "y"], &["x*y"]);
        let c = PresentedModule::cyclic(&h, &[h.var(0)]).unwrap();
        assert_eq!(transpose(&c).relations().fmt_with(h.names()), "[[x]]");
        assert_eq!(transpose(&PresentedModule::free(&h, vec![0])).rank(), 0);
    }

    #[test]
    fn torsionfree_and_gmn() {
        let r = ring(&["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        assert!(is_n_torsionfree(&k, 4).unwrap());
        assert!(class_gmn(&k, 3, 3).unwrap());
        let u = ring(&["u"], &[]);
        let ku = PresentedModule::residue_field(&u);
        assert!(!is_n_torsionfree(&ku, 1).unwrap());
        assert!(!class_gmn(&ku, 1, 0).unwrap());
    }

    #[test]
    fn finite_length() {
        let h = ring(&["x", "y"], &["x*y"]);
        assert!(has_finite_length(&PresentedModule::residue_field(&h)));
        assert!(!has_finite_length(&PresentedModule::free(&h, vec![0])));
        assert!(has_finite_length(&PresentedModule::zero(&h)));
    }

    #[test]
    fn sgrade_small_cases() {
        let f2 = Field::prime(2).unwrap();
        let r = QuotientRing::parse(f2, &["x"], &["x^2"]).unwrap();
        let k = PresentedModule::residue_field(&r);
        assert!(!sgrade_bruteforce(&k, 1, 8).unwrap());
        assert!(sgrade_bruteforce(&PresentedModule::zero(&r), 3, 8).unwrap());
        let q = ring(&["x"], &["x^2"]);
        assert!(sgrade_bruteforce(&PresentedModule::residue_field(&q), 1, 8).is_err());
    }
}
