//! Morphism-level analysis: chain lifts, `Tr f`, induced maps on Ext, the
//! condition (T_n), monomorphism witnesses and underlined kernels/cokernels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hom::is_stable_isomorphism;
use crate::homology::{
    ext, grade, is_n_torsionfree, resolve, resolve_presentation, transpose_presentation, ExtModule, Resolution,
};
use crate::matrix::Matrix;
use crate::module::{
    cokernel, free_cover, is_stably_zero, kernel, left_approximation, minimalize, phi, Module, Morphism,
    PresentedModule,
};
use crate::poly::{Poly, Vector};
use crate::ring::QuotientRing;
use crate::syz::Lifter;

/// Global switches for the analysis: reseeded lift choices and a fault
/// injection used to check that verifiers can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Knobs {
    /// When set, every chain lift adds a random boundary correction.
    pub lift_seed: Option<u64>,
    /// Fault injection: induced maps on Ext are replaced by zero.
    pub zero_ext_maps: bool,
}

impl Knobs {
    pub fn seeded(seed: u64) -> Knobs {
        Knobs { lift_seed: Some(seed), zero_ext_maps: false }
    }
}

/// A random homogeneous element of `R` of degree `d` (zero if `d < 0`).
pub fn random_poly(ring: &QuotientRing, d: i32, rng: &mut ChaCha8Rng) -> Poly {
    let field = ring.field();
    let terms = ring
        .basis_of_degree(d)
        .into_iter()
        .filter_map(|m| {
            let c: i64 = rng.gen_range(-2..=2);
            (c != 0).then(|| (m, field.from_i64(c)))
        })
        .collect();
    Poly::from_terms(terms, ring.order())
}

/// Random homogeneous matrix between free modules with the given degrees.
fn random_matrix(ring: &QuotientRing, rows: &[i32], cols: &[i32], rng: &mut ChaCha8Rng) -> Matrix {
    let entries: Vec<Vec<Poly>> =
        rows.iter().map(|&r| cols.iter().map(|&c| random_poly(ring, c - r, rng)).collect()).collect();
    if rows.is_empty() {
        return Matrix::zero(0, cols.len());
    }
    Matrix::from_rows(&entries, cols.len())
}

/// Extends `φ_0` (and optionally `φ_1`) along a complex with differentials
/// `src[i-1] = ∂_i` into the resolution `tgt`, returning `φ_0..φ_len`.
/// Stage `k` is corrected by `∂'_{k+1} H` with random `H` when `rng` is given.
pub fn extend_chain_map(
    ring: &QuotientRing,
    src: &[Matrix],
    src_degrees: &[Vec<i32>],
    tgt: &Resolution,
    phi0: Matrix,
    phi1: Option<Matrix>,
    len: usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<Vec<Matrix>> {
    let mut stages = vec![phi0];
    for k in 1..=len {
        let mut next = match (k, &phi1) {
            (1, Some(p)) => p.clone(),
            _ => {
                let img = stages[k - 1].mul(ring, &src[k - 1]);
                tgt.lifter(k)
                    .lift_matrix(&img)
                    .map_err(|e| Error::Internal(format!("chain lift fails at stage {k} ({e})")))?
            }
        };
        if let Some(r) = rng.as_deref_mut() {
            if tgt.length() > k {
                let h = random_matrix(ring, tgt.degrees(k + 1), &src_degrees[k], r);
                next = next.add(ring, &tgt.diff(k + 1).mul(ring, &h));
            }
        }
        stages.push(next);
    }
    Ok(stages)
}

/// A lift of `f` to the resolutions of the stored presentations of its ends.
#[derive(Clone, Debug)]
pub struct ChainLift {
    pub source: Resolution,
    pub target: Resolution,
    pub stages: Vec<Matrix>,
}

impl ChainLift {
    /// `∂'_i φ_i = φ_{i-1} ∂_i` for every stage.
    pub fn verify(&self, ring: &QuotientRing) -> bool {
        (1..self.stages.len()).all(|i| {
            self.target.diff(i).mul(ring, &self.stages[i]) == self.stages[i - 1].mul(ring, self.source.diff(i))
        })
    }
}

fn lift_rng(knobs: &Knobs, salt: u64) -> Option<ChaCha8Rng> {
    knobs.lift_seed.map(|s| ChaCha8Rng::seed_from_u64(s.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt))
}

pub fn lift_chain(f: &Morphism, length: usize, knobs: &Knobs) -> Result<ChainLift> {
    let ring = f.ring();
    let source = resolve_presentation(f.source(), length)?;
    let target = resolve_presentation(f.target(), length + 1)?;
    let src: Vec<Matrix> = (1..=length).map(|i| source.diff(i).clone()).collect();
    let degs: Vec<Vec<i32>> = (0..=length).map(|i| source.degrees(i).to_vec()).collect();
    let mut rng = lift_rng(knobs, length as u64);
    let phi1 = (length >= 1).then(|| f.witness().clone());
    let stages = extend_chain_map(ring, &src, &degs, &target, f.matrix().clone(), phi1, length, rng.as_mut())?;
    Ok(ChainLift { source, target, stages })
}

/// `Tr f: Tr Y → Tr X` on the transposed stored presentations.
pub fn tr_morphism(f: &Morphism) -> Morphism {
    let tx = transpose_presentation(f.source());
    let ty = transpose_presentation(f.target());
    Morphism::from_parts(&ty, &tx, f.witness().transpose(), f.matrix().transpose())
}

/// The induced map `Ext^i(Y, R) → Ext^i(X, R)` for `f: X → Y`.
#[derive(Clone, Debug)]
pub struct ExtMap {
    pub i: usize,
    pub source: ExtModule,
    pub target: ExtModule,
    pub map: Morphism,
}

impl ExtMap {
    pub fn is_injective(&self) -> Result<bool> {
        is_injective(&self.map)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        is_surjective(&self.map)
    }
}

pub fn ext_map(f: &Morphism, i: usize, knobs: &Knobs) -> Result<ExtMap> {
    let ring = f.ring();
    let ey = ext(f.target(), i)?;
    let ex = ext(f.source(), i)?;
    if knobs.zero_ext_maps {
        let map = Morphism::zero(&ey.module, &ex.module);
        return Ok(ExtMap { i, source: ey, target: ex, map });
    }
    let lift = lift_chain(f, i, knobs)?;
    let pt = lift.stages[i].transpose();
    let mut cols = Vec::with_capacity(ey.module.rank());
    for z in ey.cocycles.columns() {
        let w = pt.apply(ring, z);
        let c = ex.class_of(&w).ok_or_else(|| Error::Internal("pulled-back cocycle is not a cocycle".into()))?;
        cols.push(c);
    }
    let m = Matrix::from_columns(ex.module.rank(), cols);
    let map = Morphism::new(&ey.module, &ex.module, m)?;
    Ok(ExtMap { i, source: ey, target: ex, map })
}

pub fn is_injective(f: &Morphism) -> Result<bool> {
    Ok(kernel(f)?.0.is_zero())
}

pub fn is_surjective(f: &Morphism) -> Result<bool> {
    Ok(cokernel(f)?.0.is_zero())
}

/// `h ∘ g = 0` and `Ker h ⊆ Im g`.
pub fn exact_at(g: &Morphism, h: &Morphism) -> Result<bool> {
    let ring = g.ring();
    let comp = h.matrix().mul(ring, g.matrix());
    if !comp.columns().iter().all(|c| h.target().is_zero_element(c)) {
        return Ok(false);
    }
    let b = g.target();
    let (_, incl) = kernel(h)?;
    let l = Lifter::for_matrix(ring, b.generator_degrees(), g.matrix(), g.source().generator_degrees(), Some(b.relations()))?;
    Ok(incl.matrix().columns().iter().all(|c| l.contains(c)))
}

/// `0 → A → B → C → 0` is exact.
pub fn short_exact(g: &Morphism, h: &Morphism) -> Result<bool> {
    Ok(is_injective(g)? && exact_at(g, h)? && is_surjective(h)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TnFailure {
    NotInjective,
    NotSurjective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TnVerdict {
    pub n: usize,
    pub holds: bool,
    pub failure_stage: Option<(usize, TnFailure)>,
}

/// Injectivity and surjectivity of `Ext^i(Tr f, R)` for `i = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnProfile {
    pub stages: Vec<(bool, bool)>,
}

impl TnProfile {
    pub fn verdict(&self, n: usize) -> TnVerdict {
        assert!(n <= self.stages.len(), "profile too short");
        for i in 1..=n {
            let (inj, surj) = self.stages[i - 1];
            if !inj {
                return TnVerdict { n, holds: false, failure_stage: Some((i, TnFailure::NotInjective)) };
            }
            if i < n && !surj {
                return TnVerdict { n, holds: false, failure_stage: Some((i, TnFailure::NotSurjective)) };
            }
        }
        TnVerdict { n, holds: true, failure_stage: None }
    }

    /// Largest `n ≤ len` with (T_n).
    pub fn max_n(&self) -> usize {
        (0..=self.stages.len()).rev().find(|&n| self.verdict(n).holds).unwrap_or(0)
    }
}

pub fn tn_profile(f: &Morphism, n: usize, knobs: &Knobs) -> Result<TnProfile> {
    let tr = tr_morphism(f);
    let mut stages = Vec::with_capacity(n);
    for i in 1..=n {
        let em = ext_map(&tr, i, knobs)?;
        let inj = em.is_injective()?;
        let surj = em.is_surjective()?;
        stages.push((inj, surj));
    }
    Ok(TnProfile { stages })
}

pub fn check_tn(f: &Morphism, n: usize, knobs: &Knobs) -> Result<TnVerdict> {
    if n == 0 {
        return Ok(TnVerdict { n, holds: true, failure_stage: None });
    }
    let tr = tr_morphism(f);
    for i in 1..=n {
        let em = ext_map(&tr, i, knobs)?;
        if !em.is_injective()? {
            return Ok(TnVerdict { n, holds: false, failure_stage: Some((i, TnFailure::NotInjective)) });
        }
        if i < n && !em.is_surjective()? {
            return Ok(TnVerdict { n, holds: false, failure_stage: Some((i, TnFailure::NotSurjective)) });
        }
    }
    Ok(TnVerdict { n, holds: true, failure_stage: None })
}

/// `M ⊕ N` on concatenated generators and relations, zero columns included,
/// so that witnesses of the summands line up.
pub fn direct_sum(m: &Module, n: &Module) -> Module {
    let mut gens = m.generator_degrees().to_vec();
    gens.extend_from_slice(n.generator_degrees());
    let mut rd = m.relation_degrees().to_vec();
    rd.extend_from_slice(n.relation_degrees());
    PresentedModule::from_parts(m.ring(), gens, m.relations().block_diag(n.relations()), rd)
}

/// `(f; g): X → Y ⊕ Z`.
pub fn stack(f: &Morphism, g: &Morphism) -> Morphism {
    let target = direct_sum(f.target(), g.target());
    Morphism::from_parts(f.source(), &target, f.matrix().vcat(g.matrix()), f.witness().vcat(g.witness()))
}

/// `(f, g): X ⊕ Z → Y`.
pub fn juxtapose(f: &Morphism, g: &Morphism) -> Morphism {
    let source = direct_sum(f.source(), g.source());
    Morphism::from_parts(&source, f.target(), f.matrix().hcat(g.matrix()), f.witness().hcat(g.witness()))
}

/// A map `t: X → P` to a free module with `(f; t)` injective, when `f`
/// satisfies (T₁).
pub fn rbm_witness(f: &Morphism) -> Result<Option<Morphism>> {
    if is_injective(f)? {
        return Ok(Some(Morphism::zero(f.source(), &PresentedModule::zero(f.ring()))));
    }
    let t = left_approximation(f.source())?;
    if is_injective(&stack(f, &t))? {
        Ok(Some(t))
    } else {
        Ok(None)
    }
}

/// `Ker f ∩ Ker φ_X = 0`.
pub fn kernel_meets_phi_trivially(f: &Morphism) -> Result<bool> {
    let p = phi(f.source())?;
    is_injective(&stack(f, &p))
}

/// `Ker (f, s)` with `s` the free cover of the target.
pub fn underline_ker(f: &Morphism) -> Result<Module> {
    Ok(underline_ker_map(f)?.0)
}

/// `Ker (f, s)` together with its inclusion into `X ⊕ F`.
pub fn underline_ker_map(f: &Morphism) -> Result<(Module, Morphism)> {
    let s = free_cover(f.target());
    kernel(&juxtapose(f, &s))
}

/// `Cok (f; t)` with `t` the left approximation of the source.
pub fn underline_cok(f: &Morphism) -> Result<Module> {
    Ok(minimalize(&underline_cok_map(f)?.0).module)
}

/// `Cok (f; t)` with the projection from `Y ⊕ P`.
pub fn underline_cok_map(f: &Morphism) -> Result<(Module, Morphism)> {
    let t = left_approximation(f.source())?;
    cokernel(&stack(f, &t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Main2 {
    pub n: usize,
    pub a: bool,
    pub b: bool,
    pub c: bool,
}

pub fn eval_main2(f: &Morphism, n: usize, knobs: &Knobs) -> Result<Main2> {
    let a = check_tn(f, n, knobs)?.holds;
    let b = is_n_torsionfree(&underline_ker(f)?, n)?;
    let em = ext_map(f, 1, knobs)?;
    let (k, _) = kernel(&em.map)?;
    let c = grade(&k)?.at_least(n);
    Ok(Main2 { n, a, b, c })
}

/// All three conditions for `n = 1..=n_max`, sharing one (T_n) profile.
pub fn eval_main2_upto(f: &Morphism, n_max: usize, knobs: &Knobs) -> Result<Vec<Main2>> {
    let prof = tn_profile(f, n_max, knobs)?;
    let uk = underline_ker(f)?;
    let em = ext_map(f, 1, knobs)?;
    let (k, _) = kernel(&em.map)?;
    let g = grade(&k)?;
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        out.push(Main2 { n, a: prof.verdict(n).holds, b: is_n_torsionfree(&uk, n)?, c: g.at_least(n) });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StisoCase {
    Epi,
    Mono,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StisoReport {
    pub case: StisoCase,
    pub stable_iso: bool,
    pub criterion: bool,
}

impl StisoReport {
    pub fn agrees(&self) -> bool {
        self.stable_iso == self.criterion
    }
}

pub fn projective_dimension_at_most(m: &Module, d: usize) -> Result<bool> {
    let res = resolve(m, d + 1)?;
    Ok(res.rank(d + 1) == 0)
}

/// For epimorphisms: stable iso ⇔ kernel projective and `Tr f` has (T₁).
/// For monomorphisms: stable iso ⇔ `pd Cok f ≤ 1` and `Tr f` has (T₁).
pub fn check_stisolem(f: &Morphism, knobs: &Knobs) -> Result<StisoReport> {
    let case = if is_surjective(f)? {
        StisoCase::Epi
    } else if is_injective(f)? {
        StisoCase::Mono
    } else {
        return Err(Error::NeitherMonoNorEpi);
    };
    let stable_iso = is_stable_isomorphism(f).is_some();
    let side = match case {
        StisoCase::Epi => is_stably_zero(&kernel(f)?.0),
        StisoCase::Mono => projective_dimension_at_most(&cokernel(f)?.0, 1)?,
    };
    let criterion = side && check_tn(&tr_morphism(f), 1, knobs)?.holds;
    Ok(StisoReport { case, stable_iso, criterion })
}

/// Vector with a single entry `p` at position `i`.
pub fn unit_column(p: &Poly, i: usize) -> Vector {
    p.to_vector(i as u32)
}
