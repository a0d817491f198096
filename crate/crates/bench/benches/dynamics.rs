use std::hint::black_box;

use carl_bench::burst_setup;
use carl_core::analysis::default_detuning_grid;
use carl_core::{integrate, linear_dispersion, rhs};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_rhs(c: &mut Criterion) {
    let mut group = c.benchmark_group("rhs");
    for n_sim in [100, 1000] {
        let (model, pump, state) = burst_setup(n_sim);
        group.bench_with_input(BenchmarkId::from_parameter(n_sim), &state, |b, s| {
            b.iter(|| rhs(black_box(s), &model, &pump))
        });
    }
    group.finish();
}

fn bench_integrate(c: &mut Criterion) {
    let mut group = c.benchmark_group("integrate_30us");
    group.sample_size(10);
    for n_sim in [100, 1000] {
        let (model, pump, state) = burst_setup(n_sim);
        group.bench_with_input(BenchmarkId::from_parameter(n_sim), &state, |b, s| {
            b.iter(|| integrate(black_box(s), &model, &pump, 30e-6, 1e-7, 0.05e-6).expect("integrates"))
        });
    }
    group.finish();
}

fn bench_dispersion(c: &mut Criterion) {
    let (model, _, _) = burst_setup(100);
    let grid = default_detuning_grid(&model, 801);
    c.bench_function("linear_dispersion_801", |b| {
        b.iter(|| linear_dispersion(black_box(&model), &grid).expect("valid grid"))
    });
}

criterion_group!(benches, bench_rhs, bench_integrate, bench_dispersion);
criterion_main!(benches);
