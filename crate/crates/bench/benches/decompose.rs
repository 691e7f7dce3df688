use cosetdyn::gallery::{dlim_coded, sigma_a};
use cosetdyn::{decompose, verify_certificate, Limits};
use cosetdyn_bench::corpus;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn sigma_a_decompose(c: &mut Criterion) {
    let m = sigma_a();
    c.bench_function("decompose/sigma_a", |b| b.iter(|| decompose(black_box(&m), Limits::default()).unwrap()));
    let cert = decompose(&m, Limits::default()).unwrap();
    let mut g = c.benchmark_group("verify/sigma_a");
    for depth in [4, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(depth), &depth, |b, &d| {
            b.iter(|| verify_certificate(m.shift(), &cert, d))
        });
    }
    g.finish();
}

fn random_models(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose/random");
    for (name, m) in corpus(16) {
        g.bench_with_input(BenchmarkId::from_parameter(name), &m, |b, m| {
            b.iter(|| decompose(m, Limits::default()).unwrap())
        });
    }
    g.finish();
}

fn permutation_blocks(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose/dlim");
    for m in 1..=3 {
        let model = dlim_coded(m).point_model();
        g.bench_with_input(BenchmarkId::from_parameter(m), &model, |b, model| {
            b.iter(|| decompose(model, Limits::default()).unwrap())
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = sigma_a_decompose, random_models, permutation_blocks
}
criterion_main!(benches);
