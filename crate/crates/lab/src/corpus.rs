//! Seeded corpora of modules and morphisms over a list of rings.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stablehom::hom::HomSpace;
use stablehom::homology::{is_n_torsionfree, syzygy, transpose};
use stablehom::module::{free_cover, is_stably_zero, kernel, left_approximation, minimalize};
use stablehom::psi::same_presentation;
use stablehom::stable::{direct_sum, random_poly, stack};
use stablehom::{Error, Field, Matrix, Module, Morphism, Poly, PresentedModule, QuotientRing, Result, Ring};

/// A ring written as `Q[x,y]/(x^2,x*y,y^2)` or `F2[x]/(x^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub field: Field,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
}

impl RingSpec {
    pub fn new(field: Field, vars: &[&str], ideal: &[&str]) -> RingSpec {
        RingSpec {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            ideal: ideal.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn parse(s: &str) -> Result<RingSpec> {
        let bad = || Error::Shape(format!("cannot read ring spec `{s}`"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = s.find('[').ok_or_else(bad)?;
        let close = s.find(']').ok_or_else(bad)?;
        let field = match &s[..open] {
            "Q" => Field::rationals(),
            f => {
                let p = f.trim_start_matches('F').trim_start_matches('_');
                Field::prime(p.parse().map_err(|_| bad())?)?
            }
        };
        let vars: Vec<String> = s[open + 1..close].split(',').filter(|v| !v.is_empty()).map(String::from).collect();
        let rest = &s[close + 1..];
        let ideal = if rest.is_empty() {
            Vec::new()
        } else {
            let inner = rest.strip_prefix("/(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            inner.split(',').filter(|g| !g.is_empty()).map(String::from).collect()
        };
        Ok(RingSpec { field, vars, ideal })
    }

    pub fn build(&self) -> Result<Ring> {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let ideal: Vec<&str> = self.ideal.iter().map(|s| s.as_str()).collect();
        QuotientRing::parse(self.field, &vars, &ideal)
    }
}

impl std::fmt::Display for RingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let field = if self.field.is_finite() { format!("F{}", self.field.characteristic()) } else { "Q".into() };
        write!(f, "{field}[{}]", self.vars.join(","))?;
        if !self.ideal.is_empty() {
            write!(f, "/({})", self.ideal.join(","))?;
        }
        Ok(())
    }
}

/// `Q[x]/(x^2)`, `Q[x,y]/(x^2,xy,y^2)` and `Q[x,y]/(xy)`.
pub fn standard_rings() -> Vec<RingSpec> {
    let q = Field::rationals();
    vec![
        RingSpec::new(q, &["x"], &["x^2"]),
        RingSpec::new(q, &["x", "y"], &["x^2", "x*y", "y^2"]),
        RingSpec::new(q, &["x", "y"], &["x*y"]),
    ]
}

/// The two artinian rings of the trio over `F_2`.
pub fn f2_rings() -> Vec<RingSpec> {
    let f2 = Field::prime(2).expect("2 is prime");
    vec![RingSpec::new(f2, &["x"], &["x^2"]), RingSpec::new(f2, &["x", "y"], &["x^2", "x*y", "y^2"])]
}

/// `Q[u]`.
pub fn polynomial_line() -> RingSpec {
    RingSpec::new(Field::rationals(), &["u"], &[])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Hand,
    Cyclic,
    Closure,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MorphismKind {
    Random,
    Cover,
    Approximation,
    Inclusion,
    Special,
}

#[derive(Clone, Debug)]
pub struct CorpusModule {
    pub id: String,
    pub ring: usize,
    pub label: String,
    pub provenance: Provenance,
    pub module: Module,
}

#[derive(Clone, Debug)]
pub struct CorpusMorphism {
    pub id: String,
    pub ring: usize,
    pub label: String,
    pub kind: MorphismKind,
    pub morphism: Morphism,
}

#[derive(Clone, Debug)]
pub struct CorpusRing {
    pub spec: RingSpec,
    pub ring: Ring,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub seed: u64,
    pub rings: Vec<CorpusRing>,
    pub modules: Vec<CorpusModule>,
    pub morphisms: Vec<CorpusMorphism>,
}

impl Corpus {
    pub fn empty() -> Corpus {
        Corpus { seed: 0, rings: Vec::new(), modules: Vec::new(), morphisms: Vec::new() }
    }

    pub fn modules_over(&self, ring: usize) -> impl Iterator<Item = &CorpusModule> {
        self.modules.iter().filter(move |m| m.ring == ring)
    }

    pub fn morphisms_over(&self, ring: usize) -> impl Iterator<Item = &CorpusMorphism> {
        self.morphisms.iter().filter(move |m| m.ring == ring)
    }

    /// Keeps the first `n` modules and morphisms of each ring.
    pub fn truncated(&self, modules: usize, morphisms: usize) -> Corpus {
        let mut out = Corpus { seed: self.seed, rings: self.rings.clone(), modules: Vec::new(), morphisms: Vec::new() };
        for r in 0..self.rings.len() {
            out.modules.extend(self.modules_over(r).take(modules).cloned());
            out.morphisms.extend(self.morphisms_over(r).take(morphisms).cloned());
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeParams {
    /// Random presentations per ring.
    pub random_modules: usize,
    /// Morphisms per ring, at least.
    pub morphisms: usize,
    /// Modules with more generators than this are left out.
    pub max_rank: usize,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams { random_modules: 4, morphisms: 50, max_rank: 4 }
    }
}

pub const MAX_RANDOM_MODULES: usize = 64;
/// Random morphisms added per ring on top of the structured ones.
pub const RANDOM_MORPHISMS: usize = 16;
pub const MAX_MORPHISMS: usize = 1000;
pub const MAX_RANK: usize = 8;

pub fn gen_corpus(seed: u64, specs: &[RingSpec], size: &SizeParams) -> Result<Corpus> {
    if size.random_modules > MAX_RANDOM_MODULES {
        return Err(Error::CapExceeded(format!("{} random modules per ring > {MAX_RANDOM_MODULES}", size.random_modules)));
    }
    if size.morphisms > MAX_MORPHISMS {
        return Err(Error::CapExceeded(format!("{} morphisms per ring > {MAX_MORPHISMS}", size.morphisms)));
    }
    if size.max_rank > MAX_RANK {
        return Err(Error::CapExceeded(format!("rank cap {} > {MAX_RANK}", size.max_rank)));
    }
    let mut corpus = Corpus { seed, rings: Vec::new(), modules: Vec::new(), morphisms: Vec::new() };
    for (ix, spec) in specs.iter().enumerate() {
        let ring = spec.build()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (ix as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut b = Builder { ring: ring.clone(), ix, size: *size, modules: Vec::new(), morphisms: Vec::new() };
        b.modules(&mut rng)?;
        b.morphisms(&mut rng)?;
        corpus.modules.extend(b.modules);
        corpus.morphisms.extend(b.morphisms);
        corpus.rings.push(CorpusRing { spec: spec.clone(), ring });
    }
    Ok(corpus)
}

struct Builder {
    ring: Ring,
    ix: usize,
    size: SizeParams,
    modules: Vec<CorpusModule>,
    morphisms: Vec<CorpusMorphism>,
}

impl Builder {
    fn add_module(&mut self, label: String, provenance: Provenance, m: Module) -> bool {
        let m = minimalize(&m).module;
        if m.rank() > self.size.max_rank || m.rank() == 0 {
            return false;
        }
        if provenance != Provenance::Hand && is_stably_zero(&m) {
            return false;
        }
        if self.modules.iter().any(|c| same_presentation(&c.module, &m)) {
            return false;
        }
        let id = format!("r{}.m{:03}", self.ix, self.modules.len());
        self.modules.push(CorpusModule { id, ring: self.ix, label, provenance, module: m });
        true
    }

    fn add_morphism(&mut self, label: String, kind: MorphismKind, f: Morphism) {
        let id = format!("r{}.f{:03}", self.ix, self.morphisms.len());
        self.morphisms.push(CorpusMorphism { id, ring: self.ix, label, kind, morphism: f });
    }

    fn modules(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        let ring = self.ring.clone();
        let k = PresentedModule::residue_field(&ring);
        self.add_module("k".into(), Provenance::Hand, k);
        self.add_module("R".into(), Provenance::Hand, PresentedModule::free(&ring, vec![0]));
        // R/(I) for monomial ideals on one or two monomials of degree 1 or 2
        let mut monos: Vec<(String, Poly)> = Vec::new();
        for d in 1..=2 {
            for m in ring.basis_of_degree(d) {
                let p = Poly::from_terms(vec![(m, ring.field().one())], ring.order());
                monos.push((p.fmt_with(ring.names()), p));
            }
        }
        for i in 0..monos.len() {
            for j in i..monos.len() {
                let gens: Vec<Poly> =
                    if i == j { vec![monos[i].1.clone()] } else { vec![monos[i].1.clone(), monos[j].1.clone()] };
                let name = if i == j { monos[i].0.clone() } else { format!("{},{}", monos[i].0, monos[j].0) };
                if let Ok(m) = PresentedModule::cyclic(&ring, &gens) {
                    self.add_module(format!("R/({name})"), Provenance::Cyclic, m);
                }
            }
        }
        // Ω/Tr words of length at most 2 on the hand-built and cyclic modules
        let bases: Vec<(String, Module)> =
            self.modules.iter().filter(|c| c.label != "R").map(|c| (c.label.clone(), c.module.clone())).collect();
        for (name, m) in bases {
            let om = syzygy(&m, 1)?;
            let tr = transpose(&m);
            let words = [
                (format!("Ω {name}"), om.clone()),
                (format!("Tr {name}"), tr.clone()),
                (format!("Ω² {name}"), syzygy(&m, 2)?),
                (format!("Tr Ω {name}"), transpose(&om)),
                (format!("Ω Tr {name}"), syzygy(&tr, 1)?),
            ];
            for (label, w) in words {
                self.add_module(label, Provenance::Closure, w);
            }
        }
        let mut made = 0;
        let mut tries = 0;
        while made < self.size.random_modules && tries < 20 * (self.size.random_modules + 1) {
            tries += 1;
            let m = random_module(&ring, rng)?;
            if self.add_module(format!("random #{made}"), Provenance::Random, m) {
                made += 1;
            }
        }
        Ok(())
    }

    fn morphisms(&mut self, rng: &mut ChaCha8Rng) -> Result<()> {
        let ring = self.ring.clone();
        let mods: Vec<(String, Module)> = self.modules.iter().map(|c| (c.label.clone(), c.module.clone())).collect();
        let zero = PresentedModule::zero(&ring);
        let k = &mods[0].1;
        let r = &mods[1].1;
        // Tr k → 0
        let trk = transpose(k);
        self.add_morphism("Tr k → 0".into(), MorphismKind::Special, Morphism::zero(&trk, &zero));
        self.add_morphism("1_k".into(), MorphismKind::Special, Morphism::identity(k));
        self.add_morphism("k → 0".into(), MorphismKind::Special, Morphism::zero(k, &zero));
        // socle inclusions k(-d) → R for the top degree of an artinian ring
        if let Some(top) = ring.top_degree() {
            for (i, m) in ring.basis_of_degree(top).into_iter().enumerate() {
                let p = Poly::from_terms(vec![(m, ring.field().one())], ring.order());
                let src = PresentedModule::residue_field(&ring).twist(-top);
                let f = Morphism::new(&src, r, Matrix::from_rows(&[vec![p]], 1))?;
                self.add_morphism(format!("socle #{i} → R"), MorphismKind::Inclusion, f);
            }
        }
        // split projection M ⊕ R → M on the first non-free module
        if let Some((name, m)) = mods.iter().find(|(_, m)| !is_stably_zero(m)) {
            let sum = direct_sum(m, r);
            let mut rows = Matrix::identity(&ring, m.rank()).to_rows();
            for row in rows.iter_mut() {
                row.push(Poly::zero());
            }
            let f = Morphism::new(&sum, m, Matrix::from_rows(&rows, m.rank() + 1))?;
            self.add_morphism(format!("{name} ⊕ R → {name}"), MorphismKind::Special, f);
        }
        // (1;0): R → R ⊕ X with X not torsionless
        if let Some((name, x)) = mods.iter().find(|(_, m)| !is_n_torsionfree(m, 1).unwrap_or(true)) {
            let f = stack(&Morphism::identity(r), &Morphism::zero(r, x));
            self.add_morphism(format!("(1;0): R → R ⊕ {name}"), MorphismKind::Special, f);
        }
        // Q → X → P with X torsionless but not 3-torsionfree
        for (name, x) in &mods {
            if is_stably_zero(x) || !is_n_torsionfree(x, 1)? || is_n_torsionfree(x, 3)? {
                continue;
            }
            let f = free_cover(x).then(&left_approximation(x)?);
            self.add_morphism(format!("F → {name} → P"), MorphismKind::Special, f);
            break;
        }
        for (name, m) in &mods {
            if is_stably_zero(m) {
                continue;
            }
            let cover = free_cover(m);
            let (_, incl) = kernel(&cover)?;
            self.add_morphism(format!("F → {name}"), MorphismKind::Cover, cover);
            self.add_morphism(format!("Ω {name} → F"), MorphismKind::Inclusion, incl);
            self.add_morphism(format!("{name} → P"), MorphismKind::Approximation, left_approximation(m)?);
        }
        // random maps always get a share, however many structured ones there are
        let goal = self.size.morphisms.max(self.morphisms.len() + RANDOM_MORPHISMS);
        let mut made = 0;
        let mut tries = 0;
        while self.morphisms.len() < goal && tries < 40 * goal {
            tries += 1;
            let a = rng.gen_range(0..mods.len());
            let b = rng.gen_range(0..mods.len());
            let (x, y) = (&mods[a].1, &mods[b].1);
            let hs = HomSpace::new(x, y);
            if hs.dim() == 0 {
                continue;
            }
            let m = random_combination(&ring, &hs, rng);
            if m.is_zero() {
                continue;
            }
            let f = hs.morphism(m)?;
            self.add_morphism(format!("random #{made}: {} → {}", mods[a].0, mods[b].0), MorphismKind::Random, f);
            made += 1;
        }
        Ok(())
    }
}

fn random_combination(ring: &Ring, hs: &HomSpace, rng: &mut ChaCha8Rng) -> Matrix {
    let mut m = Matrix::zero(hs.target.rank(), hs.source.rank());
    for b in &hs.basis {
        let c = ring.field().from_i64(rng.gen_range(-2..=2));
        if !c.is_zero() {
            m = m.add(ring, &b.scale(ring, &ring.scalar(c)));
        }
    }
    m
}

/// One or two generators in degrees 0 and 1, up to three relations with
/// entries of degree at most 2.
pub fn random_module(ring: &Ring, rng: &mut ChaCha8Rng) -> Result<Module> {
    let gens: Vec<i32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..=1)).collect();
    let nrel = rng.gen_range(1..=3);
    let mut rows: Vec<Vec<Poly>> = vec![Vec::new(); gens.len()];
    for _ in 0..nrel {
        let c = rng.gen_range(1..=2);
        for (i, &d) in gens.iter().enumerate() {
            rows[i].push(random_poly(ring, c - d, rng));
        }
    }
    PresentedModule::new(ring, gens, Matrix::from_rows(&rows, nrel))
}
