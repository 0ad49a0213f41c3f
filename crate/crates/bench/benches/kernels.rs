use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mgt_bench::{fixture, metric};
use mgt_core::diagnostics::sample_invariant_cov;
use mgt_core::discovery::{discover_sequential, DiscoveryConfig};
use mgt_core::groups::{make_cyclic, make_dyadic_wreath, reynolds_project};
use mgt_core::numkernel::{gevp, herm_eig, hungarian_max, ScoreMatrix};

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("herm_eig");
    for m in [16, 64, 128] {
        let r = fixture(m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &r, |b, r| b.iter(|| herm_eig(black_box(r))));
    }
    group.finish();
}

fn generalized(c: &mut Criterion) {
    let mut group = c.benchmark_group("gevp");
    for m in [16, 64] {
        let pair = (fixture(m), metric(m));
        group.bench_with_input(BenchmarkId::from_parameter(m), &pair, |b, (a, g)| {
            b.iter(|| gevp(black_box(a), black_box(g)))
        });
    }
    group.finish();
}

fn assignment(c: &mut Criterion) {
    let mut group = c.benchmark_group("hungarian");
    for m in [16, 64, 128] {
        let r = fixture(m);
        let s = ScoreMatrix::from_fn(m, |i, j| r[(i, j)].re);
        group.bench_with_input(BenchmarkId::from_parameter(m), &s, |b, s| b.iter(|| hungarian_max(black_box(s))));
    }
    group.finish();
}

fn reynolds(c: &mut Criterion) {
    let mut group = c.benchmark_group("reynolds");
    for levels in [4, 6] {
        let g = make_dyadic_wreath(levels).unwrap();
        let r = fixture(g.degree());
        group.bench_with_input(BenchmarkId::from_parameter(g.degree()), &r, |b, r| {
            b.iter(|| reynolds_project(black_box(r), &g))
        });
    }
    group.finish();
}

fn discovery(c: &mut Criterion) {
    let mut group = c.benchmark_group("discover");
    group.sample_size(10);
    for m in [8, 12] {
        let r = sample_invariant_cov(&make_cyclic(m).unwrap(), 1);
        group.bench_with_input(BenchmarkId::new("cyclic", m), &r, |b, r| {
            b.iter(|| discover_sequential(black_box(r), &DiscoveryConfig::default()))
        });
    }
    group.finish();
}

criterion_group!(benches, eigen, generalized, assignment, reynolds, discovery);
criterion_main!(benches);
