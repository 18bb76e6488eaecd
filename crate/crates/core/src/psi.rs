//! The natural maps `θ^n` and `ψ^n_M`, built from explicit chain lifts
//! between dualized resolutions.

use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::hom::{find_stable_isomorphism, is_stable_isomorphism, stably_equal, stably_isomorphic, HomSpace};
use crate::homology::{
    depth_ring, ext, length, resolve_presentation, syzygy, syzygy_of_presentation, transpose, transpose_presentation,
    Resolution,
};
use crate::matrix::Matrix;
use crate::module::{free_cover, is_stably_zero, kernel, minimalize, Module, Morphism, PresentedModule};
use crate::ring::Ring;
use crate::stable::{check_tn, extend_chain_map, juxtapose, lift_chain, short_exact, tr_morphism, Knobs};

fn neg(v: &[i32]) -> Vec<i32> {
    v.iter().map(|d| -d).collect()
}

fn rng_for(knobs: &Knobs, salt: u64) -> Option<ChaCha8Rng> {
    knobs.lift_seed.map(|s| ChaCha8Rng::seed_from_u64(s.rotate_left(17) ^ salt.wrapping_mul(0xa076_1d64_78bd_642f)))
}

/// `coker((∂_{n+1})^T)` on `H_{n+1}^*` for a resolution `H`: `Tr Ω^n` of what `H` resolves.
pub fn tr_omega_from(h: &Resolution, n: usize) -> Module {
    PresentedModule::from_parts(
        h.module().ring(),
        neg(h.degrees(n + 1)),
        h.diff(n + 1).transpose(),
        neg(h.degrees(n)),
    )
}

/// Same generator degrees, relation degrees and relation matrix.
pub fn same_presentation(a: &Module, b: &Module) -> bool {
    a.generator_degrees() == b.generator_degrees()
        && a.relation_degrees() == b.relation_degrees()
        && a.relations() == b.relations()
}

/// `θ^n_{X,Y}(α): Tr Ω^n Tr X → Y` for `α: X → Ω^n Y`, where `Ω^n Y` is the
/// syzygy of the stored presentation of `y` and `x_tr` is the transposed
/// presentation of `X`. The source is `source` when given.
pub fn theta_with(
    alpha: &Morphism,
    x_tr: &Module,
    y: &Module,
    n: usize,
    source: Option<&Module>,
    knobs: &Knobs,
) -> Result<Morphism> {
    if n == 0 {
        return Err(Error::Hypothesis("θ^n needs n ≥ 1".into()));
    }
    let ring = y.ring();
    let g = resolve_presentation(y, n + 1)?;
    if alpha.target().generator_degrees() != g.degrees(n) || alpha.target().relations() != g.diff(n + 1) {
        return Err(Error::Shape("target of α is not the constructed Ω^n Y".into()));
    }
    let h = resolve_presentation(x_tr, n + 2)?;
    // C_k = G_{n+1-k}^*, ∂^C_k = (∂^G_{n+2-k})^T
    let src: Vec<Matrix> = (1..=n + 1).map(|k| g.diff(n + 2 - k).transpose()).collect();
    let degs: Vec<Vec<i32>> = (0..=n + 1).map(|k| neg(g.degrees(n + 1 - k))).collect();
    let mut rng = rng_for(knobs, 1000 + n as u64);
    let beta = extend_chain_map(
        ring,
        &src,
        &degs,
        &h,
        alpha.witness().transpose(),
        Some(alpha.matrix().transpose()),
        n + 1,
        rng.as_mut(),
    )?;
    let s = match source {
        Some(s) => s.clone(),
        None => tr_omega_from(&h, n),
    };
    Ok(Morphism::from_parts(&s, y, beta[n + 1].transpose(), beta[n].transpose()))
}

/// `θ^n` with the transpose of the source of `α` taken from its stored presentation.
pub fn theta(alpha: &Morphism, y: &Module, n: usize, knobs: &Knobs) -> Result<Morphism> {
    let x_tr = transpose_presentation(alpha.source());
    theta_with(alpha, &x_tr, y, n, None, knobs)
}

/// The modules and maps around `J²_m M = Tr Ω^m Tr Ω^m M` for `m ≤ n`.
#[derive(Clone, Debug)]
pub struct PsiPackage {
    pub module: Module,
    pub n: usize,
    /// `Ω^m M` on the resolution of the stored presentation.
    pub omegas: Vec<Module>,
    /// `Tr Ω^m M`, resolved by `Q^m`.
    pub trs: Vec<Module>,
    /// `J²_m M`; `j2[0]` is `M` itself.
    pub j2: Vec<Module>,
    /// `ψ^m_M: J²_m M → M`; `psi[0]` is the identity.
    pub psi: Vec<Morphism>,
    /// `step[m-1] = ψ^{m,m-1}_M: J²_m M → J²_{m-1} M`.
    pub step: Vec<Morphism>,
    /// Stages of the chain maps `f` (for `ψ^m`) and `g` (for `ψ^{m,m-1}`).
    pub f_chains: Vec<Vec<Matrix>>,
    pub g_chains: Vec<Vec<Matrix>>,
}

impl PsiPackage {
    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    pub fn j2n(&self) -> &Module {
        &self.j2[self.n]
    }

    pub fn psi_n(&self) -> &Morphism {
        &self.psi[self.n]
    }

    /// `ψ^{m,m-1}` for `1 ≤ m ≤ n`.
    pub fn psi_step(&self, m: usize) -> &Morphism {
        &self.step[m - 1]
    }

    /// `γ_M: Ω^n M → Ω^n J²_{n-1} M` from the chain map `h`.
    pub fn gamma(&self, knobs: &Knobs) -> Result<(Morphism, Module)> {
        let n = self.n;
        let ring = self.ring();
        let j = &self.j2[n - 1];
        let q = resolve_presentation(&self.trs[n - 1], n + 1)?;
        let p = resolve_presentation(&self.module, n + 1)?;
        let s = resolve_presentation(j, n + 2)?;
        // E_k = (Q_{n-k})^* for k ≤ n, E_{n+1} = P_{n+1}
        let mut src = Vec::with_capacity(n + 1);
        let mut degs: Vec<Vec<i32>> = (0..=n).map(|k| neg(q.degrees(n - k))).collect();
        degs.push(p.degrees(n + 1).to_vec());
        for k in 1..=n {
            src.push(q.diff(n - k + 1).transpose());
        }
        src.push(p.diff(n + 1).clone());
        let id0 = Matrix::identity(ring, q.rank(n));
        let id1 = Matrix::identity(ring, q.rank(n - 1));
        let mut rng = rng_for(knobs, 2000 + n as u64);
        let h = extend_chain_map(ring, &src, &degs, &s, id0, Some(id1), n + 1, rng.as_mut())?;
        let target = syzygy_of_presentation(j, n)?;
        let gamma = Morphism::from_parts(&self.omegas[n], &target, h[n].clone(), h[n + 1].clone());
        Ok((gamma, target))
    }
}

/// Builds `J²_m M`, `ψ^m_M` and `ψ^{m,m-1}_M` for `1 ≤ m ≤ n` by the chain
/// maps between the dualized resolution of `M` and resolutions of `Tr Ω^m M`.
pub fn build_psi(m: &Module, n: usize, knobs: &Knobs) -> Result<PsiPackage> {
    let ring = m.ring().clone();
    let p = resolve_presentation(m, n + 2)?;
    let mut omegas = Vec::with_capacity(n + 1);
    let mut trs = Vec::with_capacity(n + 1);
    let mut qs = Vec::with_capacity(n + 1);
    for lvl in 0..=n {
        let om = syzygy_of_presentation(m, lvl)?;
        let tr = transpose_presentation(&om);
        qs.push(resolve_presentation(&tr, lvl + 2)?);
        omegas.push(om);
        trs.push(tr);
    }
    let mut j2 = vec![m.clone()];
    for lvl in 1..=n {
        j2.push(tr_omega_from(&qs[lvl], lvl));
    }
    let mut psi = vec![Morphism::identity(m)];
    let mut step = Vec::with_capacity(n);
    let mut f_chains = vec![Vec::new()];
    let mut g_chains = Vec::with_capacity(n);
    for lvl in 1..=n {
        // ψ^lvl: C_k = P_{lvl+1-k}^*, identity on C_0, C_1
        let src: Vec<Matrix> = (1..=lvl + 1).map(|k| p.diff(lvl + 2 - k).transpose()).collect();
        let degs: Vec<Vec<i32>> = (0..=lvl + 1).map(|k| neg(p.degrees(lvl + 1 - k))).collect();
        let mut rng = rng_for(knobs, lvl as u64);
        let f = extend_chain_map(
            &ring,
            &src,
            &degs,
            &qs[lvl],
            Matrix::identity(&ring, p.rank(lvl + 1)),
            Some(Matrix::identity(&ring, p.rank(lvl))),
            lvl + 1,
            rng.as_mut(),
        )?;
        psi.push(Morphism::from_parts(&j2[lvl], m, f[lvl + 1].transpose(), f[lvl].transpose()));
        f_chains.push(f);
        // ψ^{lvl,lvl-1}: D_0 = P_{lvl+1}^*, D_k = Q^{lvl-1}_{k-1} for k ≥ 1
        let q = &qs[lvl - 1];
        let mut src = vec![p.diff(lvl + 1).transpose()];
        let mut degs = vec![neg(p.degrees(lvl + 1)), q.degrees(0).to_vec()];
        for k in 2..=lvl + 1 {
            src.push(q.diff(k - 1).clone());
            degs.push(q.degrees(k - 1).to_vec());
        }
        let mut rng = rng_for(knobs, 500 + lvl as u64);
        let g = extend_chain_map(
            &ring,
            &src,
            &degs,
            &qs[lvl],
            Matrix::identity(&ring, p.rank(lvl + 1)),
            Some(Matrix::identity(&ring, p.rank(lvl))),
            lvl + 1,
            rng.as_mut(),
        )?;
        step.push(Morphism::from_parts(&j2[lvl], &j2[lvl - 1], g[lvl + 1].transpose(), g[lvl].transpose()));
        g_chains.push(g);
    }
    Ok(PsiPackage { module: m.clone(), n, omegas, trs, j2, psi, step, f_chains, g_chains })
}

/// `Tr Ω Tr` on a morphism, on stored presentations.
pub fn tr_omega_tr(h: &Morphism, knobs: &Knobs) -> Result<Morphism> {
    let t = tr_morphism(h);
    let lift = lift_chain(&t, 2, knobs)?;
    let s = syzygy_of_presentation(t.source(), 1)?;
    let u = syzygy_of_presentation(t.target(), 1)?;
    let om = Morphism::from_parts(&s, &u, lift.stages[1].clone(), lift.stages[2].clone());
    Ok(tr_morphism(&om))
}

/// Outcome of the three unit identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitReport {
    pub n: usize,
    /// `θ^n(γ_M) ≡ ψ^{n,n-1}_M`.
    pub theta_gamma: bool,
    /// `ψ^n_M ≡ ψ^{n-1}_M ψ^{n,n-1}_M`.
    pub composition: bool,
    /// `ψ^{n,n-1}_M ≈ Tr Ω Tr ψ^{n-1,n-2}_{ΩM}`, for `n ≥ 2`.
    pub shift: Option<bool>,
}

impl UnitReport {
    pub fn all_hold(&self) -> bool {
        self.theta_gamma && self.composition && self.shift.unwrap_or(true)
    }
}

/// Are `u: A → B` and `v: A' → B'` isomorphic in the arrow category of the
/// stable category? Identical presentations are compared directly.
pub fn morphisms_equivalent(u: &Morphism, v: &Morphism, seed: u64) -> bool {
    if same_presentation(u.source(), v.source()) && same_presentation(u.target(), v.target()) {
        return stably_equal(u, &v.retarget(u.source(), u.target()));
    }
    let Some(a) = find_stable_isomorphism(u.source(), v.source(), seed) else { return false };
    let Some(b) = find_stable_isomorphism(u.target(), v.target(), seed ^ 1) else { return false };
    // adjust b by a stable automorphism solving b u ≡ v a: try the found b and
    // its composites with automorphisms of the target of v
    let va = a.then(v);
    let bu = u.then(&b);
    if stably_equal(&bu, &va) {
        return true;
    }
    let auts = HomSpace::new(v.target(), v.target());
    for (k, m) in auts.basis.iter().enumerate() {
        let Ok(c) = auts.morphism(m.clone()) else { continue };
        if is_stable_isomorphism(&c).is_none() {
            continue;
        }
        let cbu = bu.then(&c);
        if stably_equal(&cbu, &va) {
            return true;
        }
        if k > 64 {
            break;
        }
    }
    false
}

pub fn verify_unit(m: &Module, n: usize, knobs: &Knobs) -> Result<UnitReport> {
    if n == 0 {
        return Err(Error::Hypothesis("the unit identities need n ≥ 1".into()));
    }
    let pkg = build_psi(m, n, knobs)?;
    let step = pkg.psi_step(n);
    let (gamma, _) = pkg.gamma(knobs)?;
    let th = theta_with(&gamma, &pkg.trs[n], &pkg.j2[n - 1], n, Some(&pkg.j2[n]), knobs)?;
    let theta_gamma = stably_equal(&th, step);
    let comp = step.then(&pkg.psi[n - 1]);
    let composition = stably_equal(pkg.psi_n(), &comp);
    let shift = if n >= 2 {
        let om = syzygy_of_presentation(m, 1)?;
        let sub = build_psi(&om, n - 1, knobs)?;
        let v = tr_omega_tr(sub.psi_step(n - 1), knobs)?;
        Some(morphisms_equivalent(step, &v, knobs.lift_seed.unwrap_or(0)))
    } else {
        None
    };
    Ok(UnitReport { n, theta_gamma, composition, shift })
}

/// `0 → E → J²_n M ⊕ F → J²_{n-1} M → 0` with middle map `(ψ^{n,n-1}, s)`.
#[derive(Clone, Debug)]
pub struct ExtexSequence {
    pub e: Module,
    pub j: Module,
    pub j_prime: Module,
    pub incl: Morphism,
    pub map: Morphism,
    pub exact: bool,
    /// `E ≈ Tr Ω^{n-2} Ext^n(M, R)`.
    pub matches_formula: bool,
}

/// `Ext^{n-1}(Ext^n(M, R), R) = 0`.
pub fn extex_hypothesis(m: &Module, n: usize) -> Result<bool> {
    let e = ext(m, n)?;
    Ok(ext(&e.module, n - 1)?.is_zero())
}

pub fn extex_sequence(m: &Module, n: usize, knobs: &Knobs) -> Result<ExtexSequence> {
    if n < 2 {
        return Err(Error::Hypothesis("extex needs n ≥ 2".into()));
    }
    if !extex_hypothesis(m, n)? {
        return Err(Error::Hypothesis(format!("Ext^{}(Ext^{n}(M,R),R) ≠ 0", n - 1)));
    }
    let pkg = build_psi(m, n, knobs)?;
    let psi = pkg.psi_step(n);
    let s = free_cover(psi.target());
    let map = juxtapose(psi, &s);
    let (e, incl) = kernel(&map)?;
    let exact = short_exact(&incl, &map)?;
    let ext_n = ext(m, n)?.module;
    let formula = transpose(&syzygy(&ext_n, n - 2)?);
    let ee = minimalize(&e).module;
    let matches_formula = stably_isomorphic(&ee, &formula, knobs.lift_seed.unwrap_or(0));
    Ok(ExtexSequence { e, j: map.source().clone(), j_prime: psi.target().clone(), incl, map, exact, matches_formula })
}

/// `0 → P → J²_1 Z ⊕ Q → Z → 0` with middle map `(ψ^1_Z, s)`.
#[derive(Clone, Debug)]
pub struct ApproximationSequence {
    pub map: Morphism,
    pub kernel: Module,
    pub exact: bool,
    pub kernel_free: bool,
}

pub fn approximation_sequence(z: &Module, knobs: &Knobs) -> Result<ApproximationSequence> {
    let pkg = build_psi(z, 1, knobs)?;
    let s = free_cover(z);
    let map = juxtapose(pkg.psi_n(), &s);
    let (k, incl) = kernel(&map)?;
    let exact = short_exact(&incl, &map)?;
    let kernel_free = is_stably_zero(&k);
    Ok(ApproximationSequence { map, kernel: k, exact, kernel_free })
}

/// Evidence collected by the Gorenstein probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinProbe {
    pub depth: usize,
    /// `ψ^{t+1}_k` satisfies (T₁).
    pub gorenstein: bool,
    /// `ψ^{t+1,t}_k` satisfies (T₁); agrees with `gorenstein`.
    pub step_t1: bool,
    /// `length Ext^{i+1}(Tr Ω^i k, R)` for `0 ≤ i ≤ t`.
    pub ext_lengths: Vec<Option<usize>>,
    /// For `t > 0`: `ψ^t_k` and `ψ^{t,t-1}_k` satisfy (T₁) but not (T₂).
    pub t1_not_t2: Option<bool>,
}

impl GorensteinProbe {
    /// `Ext^{i+1}(Tr Ω^i k, R) ≅ k` for `i < t` and zero at `i = t`.
    pub fn ext_evidence_holds(&self) -> bool {
        let t = self.depth;
        self.ext_lengths.iter().enumerate().all(|(i, l)| if i < t { *l == Some(1) } else { *l == Some(0) })
    }
}

pub fn probe_gorenstein(ring: &Ring, knobs: &Knobs) -> Result<GorensteinProbe> {
    let t = depth_ring(ring)?;
    let k = PresentedModule::residue_field(ring);
    let pkg = build_psi(&k, t + 1, knobs)?;
    let gorenstein = check_tn(pkg.psi_n(), 1, knobs)?.holds;
    let step_t1 = check_tn(pkg.psi_step(t + 1), 1, knobs)?.holds;
    let mut ext_lengths = Vec::with_capacity(t + 1);
    for i in 0..=t {
        let tr = transpose(&syzygy(&k, i)?);
        ext_lengths.push(length(&ext(&tr, i + 1)?.module));
    }
    let t1_not_t2 = if t > 0 {
        let mut ok = true;
        for f in [&pkg.psi[t], pkg.psi_step(t)] {
            ok &= check_tn(f, 1, knobs)?.holds && !check_tn(f, 2, knobs)?.holds;
        }
        Some(ok)
    } else {
        None
    };
    Ok(GorensteinProbe { depth: t, gorenstein, step_t1, ext_lengths, t1_not_t2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::QuotientRing;

    fn ring(f: Field, vars: &[&str], ideal: &[&str]) -> Ring {
        QuotientRing::parse(f, vars, ideal).unwrap()
    }

    #[test]
    fn psi_over_dual_numbers() {
        let r = ring(Field::rationals(), &["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        let pkg = build_psi(&k, 1, &Knobs::default()).unwrap();
        assert!(stably_isomorphic(&minimalize(pkg.j2n()).module, &k, 0));
        assert!(is_stable_isomorphism(pkg.psi_n()).is_some());
        assert!(check_tn(pkg.psi_n(), 3, &Knobs::default()).unwrap().holds);
    }

    #[test]
    fn psi_over_polynomial_ring() {
        let u = ring(Field::rationals(), &["u"], &[]);
        let k = PresentedModule::residue_field(&u);
        let pkg = build_psi(&k, 1, &Knobs::default()).unwrap();
        let kn = Knobs::default();
        assert!(check_tn(pkg.psi_n(), 1, &kn).unwrap().holds);
        assert!(!check_tn(pkg.psi_n(), 2, &kn).unwrap().holds);
    }

    #[test]
    fn unit_identities() {
        let r = ring(Field::rationals(), &["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        let rep = verify_unit(&k, 1, &Knobs::default()).unwrap();
        assert!(rep.all_hold(), "{rep:?}");
        let f2 = Field::prime(2).unwrap();
        let r2 = ring(f2, &["x", "y"], &["x^2", "x*y", "y^2"]);
        let k2 = PresentedModule::residue_field(&r2);
        for seed in [None, Some(3)] {
            let kn = Knobs { lift_seed: seed, zero_ext_maps: false };
            let rep = verify_unit(&k2, 2, &kn).unwrap();
            assert!(rep.all_hold(), "{rep:?}");
        }
    }

    #[test]
    fn gorenstein_probes() {
        let kn = Knobs::default();
        let q = Field::rationals();
        let a = probe_gorenstein(&ring(q, &["x"], &["x^2"]), &kn).unwrap();
        assert!(a.gorenstein && a.step_t1 && a.ext_evidence_holds());
        let b = probe_gorenstein(&ring(q, &["x", "y"], &["x^2", "x*y", "y^2"]), &kn).unwrap();
        assert!(!b.gorenstein && !b.step_t1);
        let c = probe_gorenstein(&ring(q, &["x", "y"], &["x*y"]), &kn).unwrap();
        assert_eq!(c.depth, 1);
        assert!(c.gorenstein && c.ext_evidence_holds(), "{c:?}");
        assert_eq!(c.t1_not_t2, Some(true));
    }

    #[test]
    fn approximation_and_extex() {
        let kn = Knobs::default();
        let r = ring(Field::rationals(), &["x"], &["x^2"]);
        let k = PresentedModule::residue_field(&r);
        let s = approximation_sequence(&k, &kn).unwrap();
        assert!(s.exact && s.kernel_free);
        let e = extex_sequence(&k, 2, &kn).unwrap();
        assert!(e.exact && e.matches_formula);
        assert!(is_stably_zero(&e.e));
    }
}
