//! Sparse polynomials and sparse vectors of polynomials (module elements).
//!
//! Both are the same sorted-term structure keyed differently: a polynomial
//! is keyed by [`Monomial`], a module element by [`Term`] (position plus
//! monomial). Terms are kept sorted in decreasing order and no stored
//! coefficient is zero.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

/// The polynomial ring `k[x_1..x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub order: MonomialOrder,
    pub names: Vec<String>,
}

impl PolyRing {
    pub fn new(field: Field, names: Vec<String>, order: MonomialOrder) -> Result<Arc<Self>> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables { got: names.len(), max: MAX_VARS });
        }
        Ok(Arc::new(PolyRing { field, order, names }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::term(Monomial::var(i), self.field.one())
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::term(Monomial::one(), c)
    }
}

/// Position-over-term key of a module element: lower positions are larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub pos: u32,
    pub mono: Monomial,
}

pub trait TermKey: Copy + Eq + fmt::Debug {
    fn times(&self, m: &Monomial) -> Self;
    fn cmp_in(&self, other: &Self, order: &MonomialOrder) -> Ordering;
}

impl TermKey for Monomial {
    #[inline]
    fn times(&self, m: &Monomial) -> Self {
        self.mul(m)
    }
    #[inline]
    fn cmp_in(&self, other: &Self, order: &MonomialOrder) -> Ordering {
        order.cmp(self, other)
    }
}

impl TermKey for Term {
    #[inline]
    fn times(&self, m: &Monomial) -> Self {
        Term { pos: self.pos, mono: self.mono.mul(m) }
    }
    #[inline]
    fn cmp_in(&self, other: &Self, order: &MonomialOrder) -> Ordering {
        other.pos.cmp(&self.pos).then_with(|| order.cmp(&self.mono, &other.mono))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sparse<K> {
    terms: Vec<(K, Scalar)>,
}

pub type Poly = Sparse<Monomial>;
pub type Vector = Sparse<Term>;

impl<K: TermKey> Default for Sparse<K> {
    fn default() -> Self {
        Sparse { terms: Vec::new() }
    }
}

impl<K: TermKey> Sparse<K> {
    pub fn zero() -> Self {
        Sparse { terms: Vec::new() }
    }

    pub fn term(k: K, c: Scalar) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Sparse { terms: vec![(k, c)] }
        }
    }

    /// Builds from terms in any order, combining repeated keys.
    pub fn from_terms(mut terms: Vec<(K, Scalar)>, order: &MonomialOrder) -> Self {
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, order));
        let mut out: Vec<(K, Scalar)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = &*lc + &c,
                _ => out.push((k, c)),
            }
            if out.last().map(|(_, c)| c.is_zero()).unwrap_or(false) {
                out.pop();
            }
        }
        // a zero sum may have been popped before a later equal key arrived
        Sparse { terms: out }.normalized(order)
    }

    fn normalized(mut self, order: &MonomialOrder) -> Self {
        let sorted = self
            .terms
            .windows(2)
            .all(|w| w[0].0.cmp_in(&w[1].0, order) == Ordering::Greater);
        if sorted {
            self.terms.retain(|(_, c)| !c.is_zero());
            return self;
        }
        let terms = std::mem::take(&mut self.terms);
        Self::from_terms(terms, order)
    }

    /// Wraps terms that are already strictly decreasing with nonzero coefficients.
    pub fn from_sorted_terms(terms: Vec<(K, Scalar)>) -> Self {
        Sparse { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(K, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(K, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(K, Scalar)> {
        self.terms.first()
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(K, Scalar)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Sparse { terms: self.terms.iter().map(|(k, a)| (*k, a * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Sparse { terms: self.terms.iter().map(|(k, a)| (*k, -a)).collect() }
    }

    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Sparse { terms: self.terms.iter().map(|(k, a)| (k.times(m), a * c)).collect() }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, c: &Scalar, m: &Monomial, other: &Self, order: &MonomialOrder) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            let kb = b[j].0.times(m);
            match a[i].0.cmp_in(&kb, order) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((kb, c * &b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &(c * &b[j].1);
                    if !s.is_zero() {
                        out.push((kb, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for (k, v) in &b[j..] {
            out.push((k.times(m), c * v));
        }
        Sparse { terms: out }
    }

    pub fn add(&self, other: &Self, order: &MonomialOrder) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        let one = other.terms[0].1.field().one();
        self.add_scaled(&one, &Monomial::one(), other, order)
    }

    pub fn sub(&self, other: &Self, order: &MonomialOrder) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        let m1 = -other.terms[0].1.field().one();
        self.add_scaled(&m1, &Monomial::one(), other, order)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }
}

impl Poly {
    pub fn constant_of(c: Scalar) -> Poly {
        Poly::term(Monomial::one(), c)
    }

    pub fn mul(&self, other: &Poly, order: &MonomialOrder) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::from_terms(terms, order)
    }

    /// Degree of a homogeneous polynomial; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.degree() {
            None => true,
            Some(d) => self.terms.iter().all(|(m, _)| m.degree() == d),
        }
    }

    /// The scalar if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => None,
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_nonzero_constant(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, _)] if m.is_one())
    }

    pub fn to_vector(&self, pos: u32) -> Vector {
        Vector { terms: self.terms.iter().map(|(m, c)| (Term { pos, mono: *m }, c.clone())).collect() }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&m.fmt_with(names));
            } else {
                s.push_str(&format!("{}*{}", abs, m.fmt_with(names)));
            }
        }
        s
    }
}

impl Vector {
    /// Assembles a vector from its coordinates.
    pub fn from_entries(entries: &[Poly]) -> Vector {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((Term { pos: i as u32, mono: *m }, c.clone()));
            }
        }
        // positions ascending and each coordinate sorted descending is already POT order
        Vector { terms }
    }

    pub fn component(&self, pos: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.pos == pos)
                .map(|(t, c)| (t.mono, c.clone()))
                .collect(),
        }
    }

    /// Dense coordinates `0..rank`.
    pub fn to_entries(&self, rank: usize) -> Vec<Poly> {
        let mut out: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for (t, c) in &self.terms {
            out[t.pos as usize].push((t.mono, c.clone()));
        }
        out.into_iter().map(|terms| Poly { terms }).collect()
    }

    /// Keeps positions in `[from, to)`, renumbered from zero.
    pub fn slice_positions(&self, from: u32, to: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.pos >= from && t.pos < to)
                .map(|(t, c)| (Term { pos: t.pos - from, mono: t.mono }, c.clone()))
                .collect(),
        }
    }

    pub fn shift_positions(&self, by: u32) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (Term { pos: t.pos + by, mono: t.mono }, c.clone()))
                .collect(),
        }
    }

    /// Concatenates `self` (positions `< split`) and `other` shifted by `split`.
    pub fn concat(&self, other: &Vector, split: u32) -> Vector {
        debug_assert!(self.terms.iter().all(|(t, _)| t.pos < split));
        let mut terms = self.terms.clone();
        terms.extend(other.shift_positions(split).terms);
        Vector { terms }
    }

    /// The homogeneous degree given position degrees, or `None` for zero.
    /// Errors if the vector is not homogeneous.
    pub fn degree_in(&self, pos_degrees: &[i32]) -> Result<Option<i32>> {
        let mut deg = None;
        for (t, _) in &self.terms {
            let d = pos_degrees[t.pos as usize] + t.mono.degree() as i32;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => {
                    return Err(Error::NotHomogeneous(format!("vector has terms of degrees {e} and {d}")))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    pub fn max_position(&self) -> Option<u32> {
        self.terms.iter().map(|(t, _)| t.pos).max()
    }
}
