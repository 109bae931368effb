use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use orbit_strata::lab::{density_histogram, pushforward_haar_test, stratum_census};
use orbit_strata::lattice::corpus;
use orbit_strata::{ExecMode, Tolerance};

const MODES: [(&str, ExecMode); 2] = [("parallel", ExecMode::Parallel), ("sequential", ExecMode::Sequential)];

fn census(c: &mut Criterion) {
    let tol = Tolerance::default();
    let mut group = c.benchmark_group("census_k3");
    group.sample_size(10);
    for samples in [10_000usize, 100_000] {
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, samples), &samples, |b, &n| {
                b.iter(|| stratum_census(3, black_box(n), 42, &tol, mode).unwrap())
            });
        }
    }
    group.finish();
}

fn density(c: &mut Criterion) {
    let mut group = c.benchmark_group("density_50_bins");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| density_histogram(black_box(200_000), 50, 42, mode)));
    }
    group.finish();
}

fn pushforward(c: &mut Criterion) {
    let graph = corpus::grid(3);
    let mut group = c.benchmark_group("pushforward_grid");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| pushforward_haar_test(&graph, "grid", black_box(20_000), 42, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, census, density, pushforward);
criterion_main!(benches);
