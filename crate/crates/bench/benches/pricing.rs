//! Criterion benchmarks: transform evaluation, Bromwich inversion, full
//! benchmark-case pricing, and the Monte Carlo engine at reduced path count.

use asianpx_core::benchmark::BENCHMARK_CASES;
use asianpx_core::{
    bromwich_invert, mc_price_asian, price_asian, weber_d_closed, Complex64, InversionConfig,
    KernelConfig, McConfig, TransformEvaluator,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn bench_weber_closed(c: &mut Criterion) {
    let kernel = KernelConfig::default();
    let mut group = c.benchmark_group("weber_d_closed");
    for (label, a, nu, z) in [
        ("real_small_a", 0.0625, Complex64::new(-0.6, 0.0), Complex64::new(6.0, 0.0)),
        ("contour_node", 0.0625, Complex64::new(-0.6, 0.0), Complex64::new(170.0, 2010.6)),
        ("deep_series", 0.0025, Complex64::new(3.0, 0.0), Complex64::new(9.0, 0.0)),
    ] {
        group.bench_function(label, |b| {
            b.iter(|| weber_d_closed(black_box(a), black_box(nu), black_box(z), &kernel).unwrap())
        });
    }
    group.finish();
}

fn bench_inversion(c: &mut Criterion) {
    let cfg = InversionConfig::default();
    let evaluator = TransformEvaluator::new(0.0625, Complex64::new(-0.6, 0.0)).unwrap();
    c.bench_function("bromwich_invert_gy_case5", |b| {
        b.iter(|| bromwich_invert(black_box(&evaluator), black_box(0.0625), &cfg).unwrap())
    });
}

fn bench_benchmark_cases(c: &mut Criterion) {
    let cfg = InversionConfig::default();
    let mut group = c.benchmark_group("price_asian");
    for case in &BENCHMARK_CASES {
        group.bench_with_input(
            BenchmarkId::from_parameter(case.index),
            case,
            |b, case| {
                let market = case.market_inputs();
                b.iter(|| price_asian(black_box(&market), &cfg).unwrap())
            },
        );
    }
    group.finish();
}

fn bench_monte_carlo(c: &mut Criterion) {
    let market = BENCHMARK_CASES[4].market_inputs();
    let cfg = McConfig {
        paths: 10_000,
        steps_per_unit_time: 500,
        seed: 42,
        antithetic: true,
    };
    let mut group = c.benchmark_group("mc_price_asian");
    group.sample_size(10);
    group.bench_function("case5_10k_paths", |b| {
        b.iter(|| mc_price_asian(black_box(&market), &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_weber_closed,
    bench_inversion,
    bench_benchmark_cases,
    bench_monte_carlo
);
criterion_main!(benches);
