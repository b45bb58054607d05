use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gpf_bench::{integrands, params, ORDERS};
use gpf_core::generators::proportional_envelope;
use gpf_core::inequalities::{envelope_ratio_check, two_order_gruss_check};
use gpf_core::quadrature::GaussRule;
use gpf_core::{gpf_left, gpf_of_one_closed, gpf_of_one_series, CheckOptions, QuadConfig};

fn bench_rules(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauss_jacobi_rule");
    for n in [16, 32, 64] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| GaussRule::jacobi(black_box(n), black_box(0.37)))
        });
    }
    group.finish();
}

fn bench_gpf_left(c: &mut Criterion) {
    let cfg = QuadConfig::default();
    let x = 2.0;
    let mut group = c.benchmark_group("gpf_left");
    for (name, f) in integrands(x) {
        for (alpha, p) in ORDERS {
            let id = format!("{name}/a{alpha}_p{p}");
            group.bench_function(id, |b| {
                b.iter(|| gpf_left(params(alpha, p), black_box(&f), x, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_gpf_of_one(c: &mut Criterion) {
    let pa = params(2.5, 0.1);
    c.bench_function("gpf_of_one/closed", |b| {
        b.iter(|| gpf_of_one_closed(pa, black_box(4.0)).unwrap())
    });
    c.bench_function("gpf_of_one/series", |b| {
        b.iter(|| gpf_of_one_series(pa, black_box(4.0), 2000, 1e-18).unwrap())
    });
}

fn bench_checks(c: &mut Criterion) {
    let x = 2.0;
    let opts = CheckOptions::default();
    let [(_, f), (_, g)] = integrands(x);
    let env = proportional_envelope(&f, &g, 0.15).unwrap();
    let (pa, pb) = (params(1.5, 0.7), params(0.5, 0.3));
    c.bench_function("check/envelope_ratio", |b| {
        b.iter(|| envelope_ratio_check(pa, &f, &g, &env, black_box(x), &opts).unwrap())
    });
    c.bench_function("check/two_order_gruss", |b| {
        b.iter(|| two_order_gruss_check(pa, pb, &f, &g, &env, black_box(x), &opts).unwrap())
    });
}

criterion_group!(rules, bench_rules);
criterion_group!(operators, bench_gpf_left, bench_gpf_of_one);
criterion_group!(checks, bench_checks);
criterion_main!(rules, operators, checks);
