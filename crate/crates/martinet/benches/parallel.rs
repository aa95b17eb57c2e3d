//! Parallel-vs-sequential comparison for the data-parallel inner loops:
//! the portrait seed batch and the bifurcation sweep samples. Both paths
//! produce identical results; the benchmark measures the fan-out gain of
//! the rayon execution layer over the sequential fallback on the same
//! workload.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use martinet::dynamics::{
    integrate_trajectory, real_roots, IntegrationOptions, RootOptions, Window,
};
use martinet::exec::{map_collect, map_collect_seq};
use martinet::unfold::f2_family;

fn seed_grid(n: usize, window: Window) -> Vec<[f64; 2]> {
    let mut seeds = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let fx = (i as f64 + 0.5) / n as f64;
            let fy = (j as f64 + 0.5) / n as f64;
            seeds.push([
                window.x_min + fx * (window.x_max - window.x_min),
                window.y_min + fy * (window.y_max - window.y_min),
            ]);
        }
    }
    seeds
}

fn bench_portrait_batch(c: &mut Criterion) {
    let field = f2_family(1.0, 0.0, 1.0);
    let window = Window::new(-2.0, 1.0, -2.0, 2.0);
    let seeds = seed_grid(20, window);
    let opts = IntegrationOptions {
        step: 1e-3,
        t_end: 2.0,
        bounds: window,
        max_steps: Some(2000),
    };

    let mut group = c.benchmark_group("portrait_seed_batch");
    group.bench_function("parallel", |b| {
        b.iter(|| {
            map_collect(black_box(&seeds), |&seed| {
                integrate_trajectory(&field, seed, &opts).points.len()
            })
        })
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            map_collect_seq(black_box(&seeds), |&seed| {
                integrate_trajectory(&field, seed, &opts).points.len()
            })
        })
    });
    group.finish();
}

fn bench_sweep_samples(c: &mut Criterion) {
    let opts = RootOptions::default();
    let lambdas: Vec<f64> = (0..4001)
        .map(|i| -0.2 + 0.4 * i as f64 / 4000.0)
        .collect();
    let count = |l1: f64| {
        real_roots(
            &[l1, 0.0, 1.0, 1.0],
            opts.interval.0,
            opts.interval.1,
            opts.root_tol,
        )
        .len()
    };

    let mut group = c.benchmark_group("sweep_samples");
    group.bench_function("parallel", |b| {
        b.iter(|| map_collect(black_box(&lambdas), |&l1| count(l1)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| map_collect_seq(black_box(&lambdas), |&l1| count(l1)))
    });
    group.finish();
}

criterion_group!(benches, bench_portrait_batch, bench_sweep_samples);
criterion_main!(benches);
