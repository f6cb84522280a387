//! Sequential vs. parallel execution of the main scans.

use std::hint::black_box;

use binconc::cases::verify_all_cases_with;
use binconc::concentration::argmin_f_with;
use binconc::rademacher::{prob_within_with, tomaszewski_property_with, SignVector, UnitVectorSampler};
use binconc::Exec;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn argmin(c: &mut Criterion) {
    let mut group = c.benchmark_group("argmin_f");
    for n in [100u64, 300] {
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| argmin_f_with(black_box(n), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn case_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all_cases");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::new(name, 150), |b| {
            b.iter(|| verify_all_cases_with(black_box(150), exec).unwrap())
        });
    }
    group.finish();
}

fn rademacher(c: &mut Criterion) {
    let mut group = c.benchmark_group("rademacher");
    group.sample_size(10);
    let a = SignVector::uniform(22).unwrap();
    let sampler = UnitVectorSampler::new(15).unwrap();
    for (name, exec) in POLICIES {
        group.bench_function(BenchmarkId::new("gray_walk_n22", name), |b| {
            b.iter(|| prob_within_with(black_box(&a), 1.0, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("tomaszewski_500", name), |b| {
            b.iter(|| tomaszewski_property_with(&sampler, 500, black_box(7), exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, argmin, case_scan, rademacher);
criterion_main!(benches);
