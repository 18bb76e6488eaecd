use criterion::{criterion_group, criterion_main, Criterion};
use stablehom::stable::{eval_main2_upto, Knobs};
use stablehom_lab::corpus::{gen_corpus, standard_rings, SizeParams};
use stablehom_lab::par::{fan_out, sequential};

fn main2_sweep(c: &mut Criterion) {
    let corpus = gen_corpus(0, &standard_rings(), &SizeParams::default()).unwrap();
    let knobs = Knobs::default();
    let eval = |m: &stablehom_lab::corpus::CorpusMorphism| eval_main2_upto(&m.morphism, 3, &knobs).is_ok();
    let mut g = c.benchmark_group("main2_sweep");
    g.sample_size(10);
    g.bench_function("fan_out", |b| b.iter(|| fan_out(&corpus.morphisms, eval)));
    g.bench_function("sequential", |b| b.iter(|| sequential(&corpus.morphisms, eval)));
    g.finish();
}

criterion_group!(benches, main2_sweep);
criterion_main!(benches);
