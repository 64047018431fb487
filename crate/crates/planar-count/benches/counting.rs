//! Benchmarks for the data-parallel inner loops. Run once with the default
//! `parallel` feature and once with `--no-default-features`, saving criterion
//! baselines, to compare the rayon core against the sequential fallback:
//!
//!   cargo bench -p planar-count -- --save-baseline parallel
//!   cargo bench -p planar-count --no-default-features -- --save-baseline sequential
//!   critcmp parallel sequential

use criterion::{criterion_group, criterion_main, Criterion};
use planar_count::series::gessel_determinant;
use planar_count::tableaux::{count_tableau_pairs, BlockCondition};
use planar_count::walks::{signed_toeplitz_sum, BlockOrder};
use std::hint::black_box;

fn bench_signed_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("signed_toeplitz_sum");
    for (d, n, r) in [(5usize, 8usize, 1usize), (7, 8, 1), (4, 4, 2)] {
        group.bench_function(format!("d{d}_n{n}_r{r}"), |b| {
            b.iter(|| signed_toeplitz_sum(black_box(d), black_box(n), black_box(r), BlockOrder::Nonincreasing).unwrap())
        });
    }
    group.finish();
}

fn bench_tableau_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_tableau_pairs");
    for (n, r, d) in [(10usize, 1usize, 4usize), (5, 2, 5), (4, 3, 6)] {
        group.bench_function(format!("n{n}_r{r}_d{d}"), |b| {
            b.iter(|| count_tableau_pairs(black_box(n), black_box(r), black_box(d), BlockCondition::StrictDescent))
        });
    }
    group.finish();
}

fn bench_determinant(c: &mut Criterion) {
    let mut group = c.benchmark_group("gessel_determinant");
    for (d, xmax) in [(3usize, 20i64), (4, 16)] {
        group.bench_function(format!("d{d}_x{xmax}"), |b| {
            b.iter(|| gessel_determinant(black_box(d), black_box(xmax)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_signed_sums, bench_tableau_pairs, bench_determinant);
criterion_main!(benches);
