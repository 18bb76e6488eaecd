//! The full suite: every verifier, the mutation run and the hand-derived anchors.

use stablehom::hom::StableQuotient;
use stablehom::homology::{ext, syzygy_of_presentation};
use stablehom::module::PresentedModule;
use stablehom::psi::{build_psi, extex_sequence, probe_gorenstein, theta};
use stablehom::stable::{check_tn, Knobs};
use stablehom::{Morphism, Result};

use crate::corpus::{f2_rings, gen_corpus, polynomial_line, standard_rings, Corpus, RingSpec, SizeParams};
use crate::report::{Outcome, TheoremReport, Tree};
use crate::verify::{run_theorem, verify_main2, LabConfig, THEOREMS};

/// Corpora used by the suite.
pub struct Corpora {
    pub standard: Corpus,
    pub f2: Corpus,
}

impl Corpora {
    pub fn generate(seed: u64, size: &SizeParams) -> Result<Corpora> {
        Ok(Corpora { standard: gen_corpus(seed, &standard_rings(), size)?, f2: gen_corpus(seed, &f2_rings(), size)? })
    }

    /// θ is enumerated over the finite-field corpus, everything else over the standard rings.
    pub fn for_theorem(&self, id: &str) -> &Corpus {
        if id == "theta" {
            &self.f2
        } else {
            &self.standard
        }
    }
}

/// Runs the main2 checker with every induced Ext map replaced by zero. The
/// report passes when the corrupted checker finds a counterexample.
pub fn mutation_report(corpus: &Corpus, cfg: &LabConfig) -> TheoremReport {
    let mutated = LabConfig { knobs: Knobs { zero_ext_maps: true, ..cfg.knobs }, ..*cfg };
    let r = verify_main2(corpus, &mutated);
    let mut o = Outcome::new("main2 with zeroed Ext maps");
    o.expect(!r.passed(), "the corrupted checker reports a counterexample");
    *o.counters.entry("mutant_failures".into()).or_insert(0) += r.failures.len() as u64;
    TheoremReport::merge("mutation", vec![o])
}

fn ring(spec: &str) -> Result<stablehom::Ring> {
    RingSpec::parse(spec)?.build()
}

/// Hand-derived values that do not depend on the corpus.
pub fn anchor_report(cfg: &LabConfig) -> TheoremReport {
    let knobs = &cfg.knobs;
    let mut outcomes = Vec::new();
    let mut add = |id: &str, f: &dyn Fn(&mut Outcome) -> Result<()>| {
        let mut o = Outcome::new(id);
        if let Err(e) = f(&mut o) {
            o = Outcome::error(id, e);
        }
        outcomes.push(o);
    };
    add("psi1 k over Q[u]", &|o| {
        let r = ring(&polynomial_line().to_string())?;
        let pkg = build_psi(&PresentedModule::residue_field(&r), 1, knobs)?;
        o.expect(check_tn(&pkg.psi[1], 1, knobs)?.holds, "ψ¹_k has (T1)");
        o.expect(!check_tn(&pkg.psi[1], 2, knobs)?.holds, "ψ¹_k fails (T2)");
        Ok(())
    });
    add("psi1 k over Q[x]/(x^2)", &|o| {
        let r = ring("Q[x]/(x^2)")?;
        let pkg = build_psi(&PresentedModule::residue_field(&r), 1, knobs)?;
        o.expect(check_tn(&pkg.psi[1], 3, knobs)?.holds, "ψ¹_k has (T3)");
        Ok(())
    });
    for (spec, expected) in [("Q[x]/(x^2)", true), ("Q[x,y]/(x^2,x*y,y^2)", false), ("Q[x,y]/(x*y)", true)] {
        add(&format!("gorenstein {spec}"), &move |o| {
            let p = probe_gorenstein(&ring(spec)?, knobs)?;
            o.expect(p.gorenstein == expected, format!("probe returns {expected}"));
            o.expect(p.ext_evidence_holds(), "Ext^{i+1}(Tr Ω^i k, R) ≅ k for i < t, 0 at i = t");
            Ok(())
        });
    }
    add("theta k(-1) -> Omega k over F2[x]/(x^2)", &|o| {
        let r = ring("F2[x]/(x^2)")?;
        let k = PresentedModule::residue_field(&r);
        let x = k.twist(-1);
        let om = syzygy_of_presentation(&k, 1)?;
        let q = StableQuotient::new(&x, &om);
        let all = q.enumerate(16).unwrap_or_default();
        o.expect(all.len() == 2, "|Hom̲(k(-1), Ω k)| = 2");
        let mut keys = Vec::new();
        for c in &all {
            let th = theta(&Morphism::new(&x, &om, q.element(c))?, &k, 1, knobs)?;
            let tq = StableQuotient::new(th.source(), &k);
            o.expect(tq.dim() == 1, "|Hom̲(Tr Ω Tr k(-1), k)| = 2");
            let key = tq.key(th.matrix());
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
        o.expect(keys.len() == 2, "θ¹ is a bijection");
        Ok(())
    });
    add("extex k over Q[x,y]", &|o| {
        let r = ring("Q[x,y]")?;
        let k = PresentedModule::residue_field(&r);
        o.expect(!ext(&k, 2)?.is_zero(), "Ext²(k, R) ≠ 0");
        let s = extex_sequence(&k, 2, knobs)?;
        o.expect(s.exact, "0 → E → J → J′ → 0 exact");
        o.expect(s.matches_formula, "E ≈ Tr Ext²(k, R)");
        Ok(())
    });
    TheoremReport::merge("anchors", outcomes)
}

/// Every theorem report, then the mutation run and the anchors.
pub fn selftest(corpora: &Corpora, cfg: &LabConfig) -> Result<Vec<TheoremReport>> {
    let mut out = Vec::new();
    for id in THEOREMS {
        out.push(run_theorem(id, corpora.for_theorem(id), cfg)?);
    }
    out.push(mutation_report(&corpora.standard, cfg));
    out.push(anchor_report(cfg));
    Ok(out)
}

pub fn suite_tree(seed: u64, reports: &[TheoremReport]) -> Tree {
    let passed = reports.iter().all(|r| r.passed());
    Tree::map()
        .with("command", Tree::leaf("selftest"))
        .with("inputs", Tree::map().with("seed", Tree::leaf(seed)))
        .with("verdict", Tree::leaf(if passed { "pass" } else { "fail" }))
        .with("witnesses", Tree::List(reports.iter().map(|r| r.to_tree()).collect()))
        .with(
            "failure",
            Tree::List(reports.iter().filter(|r| !r.passed()).map(|r| Tree::leaf(&r.theorem)).collect()),
        )
}
