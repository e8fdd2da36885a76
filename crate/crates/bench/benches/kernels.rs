use boxmat_core::{build_p, eigen_symmetric, q_squared, triple_sum, BasisIndex};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn triple(c: &mut Criterion) {
    let (m, n) = (BasisIndex::new(1).unwrap(), BasisIndex::new(2).unwrap());
    let mut group = c.benchmark_group("triple_sum");
    for order in [100, 500, 1000] {
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &order| {
            b.iter(|| triple_sum(m, n, black_box(order)).unwrap())
        });
    }
    group.finish();
}

fn squaring(c: &mut Criterion) {
    c.bench_function("build_p 500", |b| {
        b.iter(|| build_p(black_box(500)).unwrap())
    });
    c.bench_function("q_squared 300", |b| {
        b.iter(|| q_squared(black_box(300)).unwrap())
    });
}

fn spectrum(c: &mut Criterion) {
    let q2 = q_squared(200).unwrap();
    c.bench_function("eigen_symmetric 200", |b| {
        b.iter(|| eigen_symmetric(black_box(&q2)).unwrap())
    });
}

criterion_group!(benches, triple, squaring, spectrum);
criterion_main!(benches);
