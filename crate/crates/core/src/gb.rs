//! Buchberger's algorithm for homogeneous submodules of graded free modules
//! `S^r = ⊕ S(-d_i)` over `S = k[x_1..x_n]`.
//!
//! Ideals are rank-one modules. The module order is position over term with
//! lower positions ranking higher, which makes every prefix of coordinates an
//! elimination block.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::poly::{Poly, PolyRing, Term, Vector};

/// A reduced Gröbner basis of a homogeneous submodule.
#[derive(Clone, Debug)]
pub struct Gb {
    ring: Arc<PolyRing>,
    degrees: Vec<i32>,
    elems: Vec<Vector>,
    by_pos: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
    degree: i32,
}

struct Builder<'a> {
    ring: &'a PolyRing,
    degrees: &'a [i32],
    elems: Vec<Vector>,
    by_pos: Vec<Vec<usize>>,
    single_pos: Vec<bool>,
    pairs: Vec<Pair>,
}

fn lt(v: &Vector) -> Term {
    v.leading().expect("nonzero vector").0
}

fn term_degree(degrees: &[i32], t: &Term) -> i32 {
    degrees[t.pos as usize] + t.mono.degree() as i32
}

impl<'a> Builder<'a> {
    fn new(ring: &'a PolyRing, degrees: &'a [i32]) -> Self {
        Builder {
            ring,
            degrees,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); degrees.len()],
            single_pos: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        self.by_pos[t.pos as usize]
            .iter()
            .copied()
            .find(|&g| lt(&self.elems[g]).mono.divides(&t.mono))
    }

    fn reduce(&self, v: &Vector) -> Vector {
        reduce_with(&self.ring.order, v, |t| self.find_reducer(t).map(|g| &self.elems[g]))
    }

    /// Gebauer–Möller update for a new, fully reduced, monic element.
    fn insert(&mut self, h: Vector) {
        let hi = self.elems.len();
        let ht = lt(&h);
        let single = h.terms().iter().all(|(t, _)| t.pos == ht.pos);
        let coprime_ok = |me: &Self, g: usize| {
            single && me.single_pos[g] && lt(&me.elems[g]).mono.is_coprime(&ht.mono)
        };
        let cands: Vec<usize> = self.by_pos[ht.pos as usize].clone();
        let lcms: Vec<(usize, Monomial)> =
            cands.iter().map(|&g| (g, lt(&self.elems[g]).mono.lcm(&ht.mono))).collect();

        // chain criterion among the new pairs
        let mut keep: Vec<(usize, Monomial)> = Vec::new();
        for (idx, &(g, l)) in lcms.iter().enumerate() {
            if coprime_ok(self, g) {
                keep.push((g, l));
                continue;
            }
            let dominated = lcms.iter().enumerate().any(|(k, &(_, l2))| {
                k != idx && l2.divides(&l) && (l2 != l || k < idx)
            });
            if !dominated {
                keep.push((g, l));
            }
        }
        // drop old pairs made redundant by h
        let degrees = self.degrees;
        let elems = &self.elems;
        self.pairs.retain(|p| {
            if p.lcm.pos != ht.pos || !ht.mono.divides(&p.lcm.mono) {
                return true;
            }
            let li = lt(&elems[p.i]).mono.lcm(&ht.mono);
            let lj = lt(&elems[p.j]).mono.lcm(&ht.mono);
            li == p.lcm.mono || lj == p.lcm.mono
        });
        for (g, l) in keep {
            if coprime_ok(self, g) {
                continue;
            }
            let lcm = Term { pos: ht.pos, mono: l };
            self.pairs.push(Pair { i: g, j: hi, lcm, degree: term_degree(degrees, &lcm) });
        }
        self.by_pos[ht.pos as usize].push(hi);
        self.single_pos.push(single);
        self.elems.push(h);
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let a = &self.elems[p.i];
        let b = &self.elems[p.j];
        let ma = lt(a).mono.quotient_of(&p.lcm.mono);
        let mb = lt(b).mono.quotient_of(&p.lcm.mono);
        let one = self.ring.field.one();
        let left = a.mul_term(&one, &ma);
        left.add_scaled(&-&one, &mb, b, &self.ring.order)
    }

    /// Adds `v` if it does not reduce to zero; reports whether it was added.
    fn add(&mut self, v: &Vector) -> bool {
        let r = self.reduce(v);
        if r.is_zero() {
            false
        } else {
            self.insert(r.monic());
            true
        }
    }

    fn run_degree(&mut self, d: i32) {
        loop {
            let mut now: Vec<Pair> = Vec::new();
            self.pairs.retain(|p| {
                if p.degree <= d {
                    now.push(*p);
                    false
                } else {
                    true
                }
            });
            if now.is_empty() {
                return;
            }
            for p in now {
                let s = self.spoly(&p);
                self.add(&s);
            }
        }
    }

    fn min_pair_degree(&self) -> Option<i32> {
        self.pairs.iter().map(|p| p.degree).min()
    }

    fn finish(self) -> Gb {
        let order = self.ring.order;
        let mut elems = self.elems;
        // drop elements whose leading term is divisible by another's
        let lts: Vec<Term> = elems.iter().map(lt).collect();
        let mut keep = vec![true; elems.len()];
        for i in 0..elems.len() {
            for j in 0..elems.len() {
                if i != j && keep[j] && lts[i].pos == lts[j].pos && lts[j].mono.divides(&lts[i].mono) {
                    if lts[i] != lts[j] || j < i {
                        keep[i] = false;
                        break;
                    }
                }
            }
        }
        let mut kept: Vec<Vector> = elems.drain(..).zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
        // by degree, then decreasing leading term
        let degrees = self.degrees;
        kept.sort_by(|a, b| {
            use crate::poly::TermKey;
            let (ta, tb) = (lt(a), lt(b));
            term_degree(degrees, &ta).cmp(&term_degree(degrees, &tb)).then_with(|| tb.cmp_in(&ta, &order))
        });
        let mut gb = Gb::from_parts(Arc::new(self.ring.clone()), self.degrees.to_vec(), kept);
        // tail-reduce each element against the others
        let n = gb.elems.len();
        for i in 0..n {
            let e = gb.elems[i].clone();
            let (head, rest) = {
                let mut rest = e.clone();
                let head = rest.pop_leading().unwrap();
                (head, rest)
            };
            let red = gb.reduce(&rest);
            gb.elems[i] = Vector::term(head.0, head.1).add(&red, &order);
        }
        gb
    }
}

pub(crate) fn reduce_with<'g, F>(order: &crate::monomial::MonomialOrder, v: &Vector, mut reducer: F) -> Vector
where
    F: FnMut(&Term) -> Option<&'g Vector>,
{
    let mut p = v.clone();
    let mut rem: Vec<(Term, Scalar)> = Vec::new();
    while let Some((t, c)) = p.leading().cloned() {
        match reducer(&t) {
            Some(g) => {
                let m = lt(g).mono.quotient_of(&t.mono);
                p = p.add_scaled(&-&c, &m, g, order);
            }
            None => {
                rem.push((t, c));
                p.pop_leading();
            }
        }
    }
    // rem is already in decreasing order
    Vector::from_terms(rem, order)
}

impl Gb {
    fn from_parts(ring: Arc<PolyRing>, degrees: Vec<i32>, elems: Vec<Vector>) -> Gb {
        let mut by_pos = vec![Vec::new(); degrees.len()];
        for (i, e) in elems.iter().enumerate() {
            by_pos[lt(e).pos as usize].push(i);
        }
        Gb { ring, degrees, elems, by_pos }
    }

    /// Reduced Gröbner basis of the submodule spanned by `gens`.
    pub fn compute(ring: &Arc<PolyRing>, degrees: &[i32], gens: &[Vector]) -> Result<Gb> {
        Ok(Self::compute_tracking(ring, degrees, gens, &[])?.0)
    }

    /// Reduced Gröbner basis of the span of `fixed ∪ counted`, together with
    /// the indices of a minimal subset of `counted` that, with `fixed`,
    /// still generates. Within each degree candidates are taken in order.
    pub fn compute_tracking(
        ring: &Arc<PolyRing>,
        degrees: &[i32],
        fixed: &[Vector],
        counted: &[Vector],
    ) -> Result<(Gb, Vec<usize>)> {
        let mut inputs: BTreeMap<i32, (Vec<&Vector>, Vec<(usize, &Vector)>)> = BTreeMap::new();
        for v in fixed {
            check_rank(v, degrees.len())?;
            if let Some(d) = v.degree_in(degrees)? {
                inputs.entry(d).or_default().0.push(v);
            }
        }
        for (i, v) in counted.iter().enumerate() {
            check_rank(v, degrees.len())?;
            if let Some(d) = v.degree_in(degrees)? {
                inputs.entry(d).or_default().1.push((i, v));
            }
        }
        let mut b = Builder::new(ring, degrees);
        let mut minimal = Vec::new();
        loop {
            let next_in = inputs.keys().next().copied();
            let next_pair = b.min_pair_degree();
            let d = match (next_in, next_pair) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(p)) => p,
                (Some(a), Some(p)) => a.min(p),
            };
            b.run_degree(d);
            if let Some((fx, cnt)) = inputs.remove(&d) {
                for v in fx {
                    b.add(v);
                    b.run_degree(d);
                }
                for (i, v) in cnt {
                    if b.add(v) {
                        minimal.push(i);
                    }
                    b.run_degree(d);
                }
            }
        }
        Ok((b.finish(), minimal))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elems
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn leading_terms(&self) -> Vec<Term> {
        self.elems.iter().map(lt).collect()
    }

    pub fn find_reducer(&self, t: &Term) -> Option<&Vector> {
        self.by_pos
            .get(t.pos as usize)?
            .iter()
            .map(|&g| &self.elems[g])
            .find(|g| lt(g).mono.divides(&t.mono))
    }

    /// Is the term a leading term multiple (i.e. not a standard term)?
    pub fn is_reducible(&self, t: &Term) -> bool {
        self.find_reducer(t).is_some()
    }

    /// The normal form of `v`.
    pub fn reduce(&self, v: &Vector) -> Vector {
        reduce_with(&self.ring.order, v, |t| self.find_reducer(t))
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Normal form of a polynomial against a rank-one basis.
    pub fn reduce_poly(&self, p: &Poly) -> Poly {
        self.reduce(&p.to_vector(0)).component(0)
    }
}

fn check_rank(v: &Vector, rank: usize) -> Result<()> {
    match v.max_position() {
        Some(p) if p as usize >= rank => {
            Err(Error::Shape(format!("vector has position {p} but the ambient rank is {rank}")))
        }
        _ => Ok(()),
    }
}

/// Reduced Gröbner basis of a homogeneous ideal.
pub fn buchberger(ring: &Arc<PolyRing>, gens: &[Poly]) -> Result<Gb> {
    for g in gens {
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous(g.fmt_with(&ring.names)));
        }
    }
    let vs: Vec<Vector> = gens.iter().map(|g| g.to_vector(0)).collect();
    Gb::compute(ring, &[0], &vs)
}

pub fn normal_form(f: &Poly, gb: &Gb) -> Poly {
    gb.reduce_poly(f)
}

/// Reduced basis of a submodule of `S^rank` with the given position degrees.
pub fn module_gb(ring: &Arc<PolyRing>, degrees: &[i32], columns: &[Vector]) -> Result<Gb> {
    Gb::compute(ring, degrees, columns)
}

/// Krull dimension of `S/I` from the leading monomials of a reduced basis of `I`.
pub fn krull_dim(gb: &Gb) -> Result<usize> {
    let n = gb.ring().nvars();
    let lts: Vec<u32> = gb.leading_terms().iter().map(|t| t.mono.support()).collect();
    if gb.leading_terms().iter().any(|t| t.mono.is_one()) {
        return Err(Error::UnitIdeal);
    }
    let mut best = 0;
    for set in 0u32..(1 << n) {
        // independent: no leading monomial lives only on variables in `set`
        if lts.iter().all(|&s| s & !set != 0) {
            best = best.max(set.count_ones() as usize);
        }
    }
    Ok(best)
}
