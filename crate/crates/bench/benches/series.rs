use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke_core::identities::{theorem_factors, theorem_rhs, verify_theorem_main};
use hecke_core::{
    arith, enumerate_c, euler_product, partition_numbers, partition_series, product_of,
    CyclotomicRing,
};

fn partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition_numbers");
    for t in [100usize, 500, 2000] {
        group.bench_with_input(BenchmarkId::from_parameter(t), &t, |b, &t| {
            b.iter(|| partition_numbers(black_box(t)))
        });
    }
    group.finish();
}

fn euler(c: &mut Criterion) {
    c.bench_function("euler_product_300_24", |b| {
        b.iter(|| euler_product(black_box(300), 24))
    });
}

fn integer_mul(c: &mut Criterion) {
    let x = partition_series(400);
    c.bench_function("int_mul_400", |b| b.iter(|| x.mul(black_box(&x)).unwrap()));
    c.bench_function("int_pow_200_24", |b| {
        let y = partition_series(200);
        b.iter(|| y.pow(black_box(24)))
    });
}

fn theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem_main");
    group.sample_size(10);
    for (n, t) in [(6u64, 48usize), (12, 48), (12, 96)] {
        let cosets = enumerate_c(n).unwrap();
        let ring = CyclotomicRing::of(n).unwrap();
        let factors = theorem_factors(&cosets, n, t).unwrap();
        let label = format!("N{n}_T{t}");
        group.bench_function(BenchmarkId::new("factors", &label), |b| {
            b.iter(|| theorem_factors(black_box(&cosets), n, t).unwrap())
        });
        group.bench_function(BenchmarkId::new("product", &label), |b| {
            b.iter(|| product_of(&ring, t, black_box(&factors)).unwrap())
        });
        group.bench_function(BenchmarkId::new("rhs", &label), |b| {
            b.iter(|| theorem_rhs(n, arith::psi(n).unwrap(), black_box(t)).unwrap())
        });
        group.bench_function(BenchmarkId::new("verify", &label), |b| {
            b.iter(|| verify_theorem_main(black_box(n), t).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, partitions, euler, integer_mul, theorem);
criterion_main!(benches);
