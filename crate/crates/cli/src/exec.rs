//! Runs scenario commands and turns each into a report record.

use stablehom::homology::{ext, grade, is_n_torsionfree, resolve};
use stablehom::psi::{build_psi, probe_gorenstein};
use stablehom::stable::{check_stisolem, check_tn, rbm_witness, tn_profile, StisoCase, TnFailure};
use stablehom::{Error, Module, Ring};
use stablehom_lab::corpus::{gen_corpus, RingSpec, SizeParams};
use stablehom_lab::report::Tree;
use stablehom_lab::verify::{run_theorem, LabConfig};

use crate::scenario::{build_env, Decl, Env, Scenario, ScenarioError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    /// Width of the degree window for degreewise dimensions.
    pub max_degree: i32,
    pub max_resolution: usize,
    /// Morphisms per ring for corpus runs.
    pub corpus_size: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: 0, max_degree: 4, max_resolution: 6, corpus_size: 50 }
    }
}

impl Options {
    pub fn lab_config(&self) -> LabConfig {
        LabConfig { seed: self.seed, max_degree: self.max_degree, ..LabConfig::default() }
    }

    pub fn size(&self) -> SizeParams {
        SizeParams { morphisms: self.corpus_size, ..SizeParams::default() }
    }
}

/// One report record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub tree: Tree,
    /// The command errored or a verifier reported a counterexample.
    pub failed: bool,
}

struct Body {
    inputs: Tree,
    verdict: String,
    witnesses: Tree,
    failure: Option<String>,
}

fn record(command: &str, body: Result<Body, Error>) -> Record {
    let (inputs, verdict, witnesses, failure) = match body {
        Ok(b) => (b.inputs, b.verdict, b.witnesses, b.failure),
        Err(e) => (Tree::map(), "error".to_string(), Tree::map(), Some(e.to_string())),
    };
    let failed = failure.is_some();
    let tree = Tree::map()
        .with("command", Tree::leaf(command))
        .with("inputs", inputs)
        .with("verdict", Tree::leaf(verdict))
        .with("witnesses", witnesses)
        .with("failure", Tree::leaf(failure.as_deref().unwrap_or("none")));
    Record { tree, failed }
}

fn module_tree(m: &Module) -> Tree {
    Tree::leaf(m.describe())
}

fn numbers<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn cap(what: &str, got: usize, max: usize) -> Result<(), Error> {
    if got > max {
        return Err(Error::CapExceeded(format!("{what} {got} exceeds --max-resolution {max}")));
    }
    Ok(())
}

fn usize_arg(a: &str) -> usize {
    a.parse().expect("checked by the parser")
}

/// Degreewise dimensions from the lowest generator degree over the window.
fn dims(m: &Module, width: i32) -> Tree {
    let Some(lo) = m.generator_degrees().iter().copied().min() else { return Tree::map() };
    Tree::Map((lo..=lo + width).map(|d| (format!("degree {d}"), Tree::leaf(m.dim_in_degree(d)))).collect())
}

fn gorenstein_body(name: &str, ring: &Ring, opts: &Options) -> Result<Body, Error> {
    let p = probe_gorenstein(ring, &opts.lab_config().knobs)?;
    let lengths: Vec<String> =
        p.ext_lengths.iter().map(|l| l.map_or("infinite".to_string(), |l| l.to_string())).collect();
    let mut w = Tree::map()
        .with("depth", Tree::leaf(p.depth))
        .with("psi_step_t1", Tree::leaf(p.step_t1))
        .with("ext_lengths", Tree::leaf(numbers(&lengths)))
        .with("ext_evidence", Tree::leaf(p.ext_evidence_holds()));
    if let Some(b) = p.t1_not_t2 {
        w = w.with("t1_not_t2", Tree::leaf(b));
    }
    let consistent = p.step_t1 == p.gorenstein && p.ext_evidence_holds() && p.t1_not_t2 != Some(false);
    Ok(Body {
        inputs: Tree::map().with("ring", Tree::leaf(name)),
        verdict: p.gorenstein.to_string(),
        witnesses: w,
        failure: (!consistent).then(|| "probe evidence is inconsistent".to_string()),
    })
}

fn verify_body(theorem: &str, spec: &RingSpec, opts: &Options) -> Result<Body, Error> {
    let corpus = gen_corpus(opts.seed, std::slice::from_ref(spec), &opts.size())?;
    let report = run_theorem(theorem, &corpus, &opts.lab_config())?;
    let failures: Vec<String> =
        report.failures.iter().map(|f| format!("{}: {}", f.instance, f.implication)).collect();
    Ok(Body {
        inputs: Tree::map()
            .with("theorem", Tree::leaf(theorem))
            .with("ring", Tree::leaf(spec))
            .with("seed", Tree::leaf(opts.seed))
            .with("corpus_size", Tree::leaf(opts.corpus_size)),
        verdict: report.verdict().to_string(),
        witnesses: report.to_tree(),
        failure: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

fn check(env: &Env, command: &str, args: &[String], opts: &Options) -> Result<Body, Error> {
    let knobs = opts.lab_config().knobs;
    let module = |i: usize| env.modules[&args[i]].clone();
    let map = |i: usize| env.maps[&args[i]].clone();
    let named = |key: &str, i: usize| Tree::map().with(key, Tree::leaf(&args[i]));
    let body = |inputs: Tree, verdict: String, witnesses: Tree| Body { inputs, verdict, witnesses, failure: None };
    Ok(match command {
        "resolve" => {
            let len = args.get(1).map_or(opts.max_resolution, |a| usize_arg(a));
            cap("resolution length", len, opts.max_resolution)?;
            let res = resolve(&module(0), len)?;
            let w = Tree::Map((0..=len).map(|i| (format!("F{i}"), Tree::leaf(numbers(res.degrees(i))))).collect());
            body(named("module", 0).with("length", Tree::leaf(len)), format!("ranks {}", numbers(&res.ranks())), w)
        }
        "ext" => {
            let i = usize_arg(&args[1]);
            cap("Ext index", i, opts.max_resolution)?;
            let e = ext(&module(0), i)?;
            let verdict = if e.is_zero() { "zero" } else { "nonzero" };
            let w = Tree::map().with("presentation", module_tree(&e.module)).with("dims", dims(&e.module, opts.max_degree));
            body(named("module", 0).with("i", Tree::leaf(i)), verdict.into(), w)
        }
        "grade" => body(named("module", 0), grade(&module(0))?.to_string(), Tree::map()),
        "torsionfree" => {
            let n = usize_arg(&args[1]);
            cap("torsionfree index", n, opts.max_resolution)?;
            let tf = is_n_torsionfree(&module(0), n)?;
            body(named("module", 0).with("n", Tree::leaf(n)), tf.to_string(), Tree::map())
        }
        "tn" => {
            let n = usize_arg(&args[1]);
            cap("(T_n) index", n, opts.max_resolution)?;
            let v = check_tn(&map(0), n, &knobs)?;
            let w = match v.failure_stage {
                Some((i, TnFailure::NotInjective)) => Tree::map().with("failure_stage", Tree::leaf(format!("Ext^{i}(Tr f, R) not injective"))),
                Some((i, TnFailure::NotSurjective)) => Tree::map().with("failure_stage", Tree::leaf(format!("Ext^{i}(Tr f, R) not surjective"))),
                None => Tree::map(),
            };
            body(named("map", 0).with("n", Tree::leaf(n)), v.holds.to_string(), w)
        }
        "rbm" => {
            let f = map(0);
            let t = rbm_witness(&f)?;
            let w = match &t {
                Some(t) => Tree::map()
                    .with("t", Tree::leaf(t.matrix().fmt_with(f.ring().names())))
                    .with("projective_rank", Tree::leaf(t.target().rank())),
                None => Tree::map(),
            };
            body(named("map", 0), t.is_some().to_string(), w)
        }
        "stisolem" => {
            let r = check_stisolem(&map(0), &knobs)?;
            let case = match r.case {
                StisoCase::Mono => "mono",
                StisoCase::Epi => "epi",
            };
            let w = Tree::map().with("case", Tree::leaf(case)).with("criterion", Tree::leaf(r.criterion));
            let mut b = body(named("map", 0), r.stable_iso.to_string(), w);
            if !r.agrees() {
                b.failure = Some("stable isomorphism and criterion disagree".into());
            }
            b
        }
        "psi" => {
            let n = usize_arg(&args[1]);
            cap("psi index", n, opts.max_resolution)?;
            let pkg = build_psi(&module(0), n, &knobs)?;
            let depth = 3;
            let prof = tn_profile(pkg.psi_n(), depth, &knobs)?;
            let step = tn_profile(pkg.psi_step(n), depth, &knobs)?;
            let w = Tree::map()
                .with("J2", module_tree(pkg.j2n()))
                .with("psi", Tree::leaf(pkg.psi_n().matrix().fmt_with(pkg.ring().names())))
                .with("psi_max_tn", Tree::leaf(prof.max_n()))
                .with("psi_step_max_tn", Tree::leaf(step.max_n()));
            body(named("module", 0).with("n", Tree::leaf(n)), format!("largest n ≤ {depth} with (T_n): {}", prof.max_n()), w)
        }
        "probe-gorenstein" => gorenstein_body(&args[0], &env.rings[&args[0]], opts)?,
        "verify" => verify_body(&args[0], &env.specs[&args[1]], opts)?,
        other => unreachable!("unknown command {other} passed the parser"),
    })
}

/// Executes the checks of a scenario in file order.
pub fn run_scenario(sc: &Scenario, opts: &Options) -> Result<Vec<Record>, ScenarioError> {
    let env = build_env(sc)?;
    let mut out = Vec::new();
    for item in &sc.items {
        if let Decl::Check { command, args } = item {
            out.push(record(&item.to_string(), check(&env, command, args, opts)));
        }
    }
    Ok(out)
}

/// One probe record per declared ring.
pub fn probe_rings(sc: &Scenario, opts: &Options) -> Result<Vec<Record>, ScenarioError> {
    let env = build_env(sc)?;
    Ok(env
        .ring_order
        .iter()
        .map(|name| record(&format!("probe-gorenstein {name}"), gorenstein_body(name, &env.rings[name], opts)))
        .collect())
}

pub fn verify_record(theorem: &str, ring: &str, opts: &Options) -> Record {
    let command = format!("verify --theorem {theorem} --ring {ring} --corpus-size {}", opts.corpus_size);
    record(&command, RingSpec::parse(ring).and_then(|spec| verify_body(theorem, &spec, opts)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    JsonLikeTree,
}

pub fn render(trees: &[Tree], format: Format) -> String {
    match format {
        Format::Text => trees.iter().map(|t| t.to_text()).collect::<Vec<_>>().join("\n"),
        Format::JsonLikeTree => Tree::List(trees.to_vec()).to_json_like(),
    }
}
