use cosetdyn::wandering::{
    classify_blocks, cycle_plus_q3_graph, dual_entropy, matrix_no_periodics, q3xq3_certificate, q3xq3_graph,
    totally_wandering, z2_system,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn growth(c: &mut Criterion) {
    let g = q3xq3_graph();
    let mut group = c.benchmark_group("dual_entropy/q3xq3");
    for n in [6, 9, 12] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| dual_entropy(&g, g.base(), n).unwrap())
        });
    }
    group.finish();
}

fn certificates(c: &mut Criterion) {
    let g = q3xq3_graph();
    let cert = q3xq3_certificate();
    c.bench_function("totally_wandering/q3xq3", |b| {
        b.iter(|| totally_wandering(&g, &cert, black_box(8)).unwrap())
    });
    let g = cycle_plus_q3_graph();
    c.bench_function("classify/cycle_plus_q3", |b| b.iter(|| classify_blocks(&g, black_box(9)).unwrap()));
}

fn matrix(c: &mut Criterion) {
    let m = z2_system();
    c.bench_function("no_periodics/z2/50", |b| b.iter(|| matrix_no_periodics(&m, black_box(50))));
}

criterion_group!(benches, growth, certificates, matrix);
criterion_main!(benches);
