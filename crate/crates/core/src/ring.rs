use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::gb::{buchberger, krull_dim, Gb};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Poly, PolyRing, Term, Vector};

/// `R = k[x_1..x_n]/I` with `I` homogeneous and contained in the square of
/// the irrelevant ideal.
#[derive(Debug)]
pub struct QuotientRing {
    poly: Arc<PolyRing>,
    ideal_gens: Vec<Poly>,
    ideal: Gb,
    dim: usize,
}

pub type Ring = Arc<QuotientRing>;

impl QuotientRing {
    pub fn new(field: Field, vars: &[&str], order: MonomialOrder, gens: Vec<Poly>) -> Result<Ring> {
        let poly = PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect(), order)?;
        Self::from_poly_ring(poly, gens)
    }

    pub fn from_poly_ring(poly: Arc<PolyRing>, gens: Vec<Poly>) -> Result<Ring> {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.fmt_with(&poly.names)));
            }
            if g.degree().unwrap_or(0) < 2 {
                return Err(Error::LowDegreeGenerator(g.fmt_with(&poly.names)));
            }
        }
        let ideal = buchberger(&poly, &gens)?;
        let dim = krull_dim(&ideal)?;
        Ok(Arc::new(QuotientRing { poly, ideal_gens: gens, ideal, dim }))
    }

    /// Builds a ring from textual generators, e.g. `parse(Q, &["x","y"], &["x^2","x*y"])`.
    pub fn parse(field: Field, vars: &[&str], ideal: &[&str]) -> Result<Ring> {
        let poly = PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::grevlex())?;
        let gens = ideal.iter().map(|s| parse_poly(&poly, s)).collect::<Result<Vec<_>>>()?;
        Self::from_poly_ring(poly, gens)
    }

    pub fn poly_ring(&self) -> &Arc<PolyRing> {
        &self.poly
    }

    pub fn field(&self) -> Field {
        self.poly.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.poly.order
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn names(&self) -> &[String] {
        &self.poly.names
    }

    pub fn ideal_generators(&self) -> &[Poly] {
        &self.ideal_gens
    }

    pub fn ideal_gb(&self) -> &Gb {
        &self.ideal
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn var(&self, i: usize) -> Poly {
        self.poly.var(i)
    }

    pub fn one(&self) -> Poly {
        Poly::constant_of(self.field().one())
    }

    pub fn scalar(&self, c: Scalar) -> Poly {
        Poly::constant_of(c)
    }

    pub fn parse_poly(&self, s: &str) -> Result<Poly> {
        parse_poly(&self.poly, s).map(|p| self.nf(&p))
    }

    pub fn nf(&self, p: &Poly) -> Poly {
        if self.ideal.is_empty() {
            return p.clone();
        }
        self.ideal.reduce_poly(p)
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, self.order())
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a.sub(b, self.order())
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.nf(&a.mul(b, self.order()))
    }

    /// Entrywise normal form of a vector.
    pub fn nf_vector(&self, v: &Vector) -> Vector {
        if self.ideal.is_empty() || v.is_zero() {
            return v.clone();
        }
        let order = self.order();
        let ig = &self.ideal;
        // reduce with the ideal basis placed in whichever position is being reduced
        let mut p = v.clone();
        let mut rem: Vec<(Term, Scalar)> = Vec::new();
        while let Some((t, c)) = p.leading().cloned() {
            match ig.find_reducer(&Term { pos: 0, mono: t.mono }) {
                Some(g) => {
                    let gl = g.leading().unwrap().0.mono;
                    let m = gl.quotient_of(&t.mono);
                    let gv = g.component(0).to_vector(t.pos);
                    p = p.add_scaled(&-&c, &m, &gv, order);
                }
                None => {
                    rem.push((t, c));
                    p.pop_leading();
                }
            }
        }
        Vector::from_terms(rem, order)
    }

    /// `v * p` computed in `R`.
    pub fn scale_vector(&self, v: &Vector, p: &Poly) -> Vector {
        let order = self.order();
        let mut out = Vector::zero();
        for (m, c) in p.terms() {
            out = out.add_scaled(c, m, v, order);
        }
        self.nf_vector(&out)
    }

    /// `I·e_i` for every position `i < rank`, shifted by `offset`.
    pub fn ideal_vectors(&self, rank: usize, offset: u32) -> Vec<Vector> {
        let mut out = Vec::new();
        for i in 0..rank {
            for g in self.ideal.elements() {
                out.push(g.component(0).to_vector(offset + i as u32));
            }
        }
        out
    }

    /// Standard monomials of degree `d`: the k-basis of `R_d`.
    pub fn basis_of_degree(&self, d: i32) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        Monomial::all_of_degree(self.nvars(), d as u32)
            .into_iter()
            .filter(|m| !self.ideal.is_reducible(&Term { pos: 0, mono: *m }))
            .collect()
    }

    /// Largest degree with `R_d ≠ 0`, if `R` is artinian.
    pub fn top_degree(&self) -> Option<i32> {
        if self.dim > 0 {
            return None;
        }
        let mut d = 0;
        while !self.basis_of_degree(d + 1).is_empty() {
            d += 1;
        }
        Some(d)
    }

    pub fn describe(&self) -> String {
        let vars = self.names().join(",");
        let gens: Vec<String> = self.ideal_gens.iter().map(|g| g.fmt_with(self.names())).collect();
        format!("{}[{}]/({})", self.field(), vars, gens.join(", "))
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Parses polynomials such as `x^2 - 3/2*x*y + y^2` or `2 x y`.
pub fn parse_poly(ring: &PolyRing, s: &str) -> Result<Poly> {
    let bad = |msg: &str| Error::Shape(format!("cannot parse polynomial `{s}`: {msg}"));
    let field = ring.field;
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut terms: Vec<(Monomial, Scalar)> = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            None
        } else {
            chars[start..*i].iter().collect::<String>().parse().ok()
        }
    };
    skip_ws(&mut i);
    if i == chars.len() {
        return Err(bad("empty"));
    }
    loop {
        skip_ws(&mut i);
        let mut sign = 1i64;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
            skip_ws(&mut i);
        }
        let mut coeff = field.from_i64(sign);
        let mut exps = vec![0u16; ring.nvars()];
        let mut factors = 0;
        loop {
            skip_ws(&mut i);
            if i >= chars.len() || chars[i] == '+' || chars[i] == '-' {
                break;
            }
            if chars[i] == '*' {
                if factors == 0 {
                    return Err(bad("dangling `*`"));
                }
                i += 1;
                continue;
            }
            if chars[i].is_ascii_digit() {
                let n = read_int(&mut i).ok_or_else(|| bad("number too large"))?;
                let mut c = field.from_i64(n);
                skip_ws(&mut i);
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    skip_ws(&mut i);
                    let d = read_int(&mut i).ok_or_else(|| bad("expected denominator"))?;
                    let ds = field.from_i64(d);
                    if ds.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    c = &c * &ds.inv();
                }
                coeff = &coeff * &c;
                factors += 1;
                continue;
            }
            if chars[i].is_alphabetic() || chars[i] == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[start..i].iter().collect();
                let v = ring
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| bad(&format!("unknown variable `{name}`")))?;
                skip_ws(&mut i);
                let mut e = 1u16;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    skip_ws(&mut i);
                    e = read_int(&mut i).ok_or_else(|| bad("expected exponent"))? as u16;
                }
                exps[v] += e;
                factors += 1;
                continue;
            }
            return Err(bad(&format!("unexpected `{}`", chars[i])));
        }
        if factors == 0 {
            return Err(bad("missing term"));
        }
        terms.push((Monomial::from_exponents(&exps), coeff));
        if i >= chars.len() {
            break;
        }
    }
    Ok(Poly::from_terms(terms, &ring.order))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_and_errors() {
        let q = Field::rationals();
        assert_eq!(QuotientRing::parse(q, &["x"], &["x^2"]).unwrap().dim(), 0);
        assert_eq!(QuotientRing::parse(q, &["x", "y"], &["x*y"]).unwrap().dim(), 1);
        assert!(matches!(QuotientRing::parse(q, &["x", "y"], &["x - y"]), Err(Error::LowDegreeGenerator(_))));
        assert!(matches!(QuotientRing::parse(q, &["x", "y"], &["x^2 - y"]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn parse_and_print() {
        let r = QuotientRing::parse(Field::rationals(), &["x", "y"], &[]).unwrap();
        let p = r.parse_poly("x^2 - 3/2*x*y + 2 y^2 - x^2").unwrap();
        assert_eq!(p.fmt_with(r.names()), "-3/2*x*y + 2*y^2");
        assert!(r.parse_poly("x + z").is_err());
        assert!(r.parse_poly("* x").is_err());
    }

    #[test]
    fn arithmetic_mod_ideal() {
        let r = QuotientRing::parse(Field::rationals(), &["x", "y"], &["x^2", "x*y", "y^2"]).unwrap();
        let x = r.var(0);
        let y = r.var(1);
        assert!(r.mul(&x, &y).is_zero());
        assert_eq!(r.basis_of_degree(1).len(), 2);
        assert!(r.basis_of_degree(2).is_empty());
        assert_eq!(r.top_degree(), Some(1));
        let v = Vector::from_entries(&[r.mul(&x, &r.one()), y.clone()]);
        assert!(r.scale_vector(&v, &x).is_zero());
    }
}
