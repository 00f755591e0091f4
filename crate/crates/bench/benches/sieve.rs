use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use waring_bench::{starting_sieve, SIEVE_LIMITS};
use waring_core::bsets::stabilize;

fn advance(c: &mut Criterion) {
    let mut group = c.benchmark_group("advance");
    group.sample_size(10);
    for &limit in &SIEVE_LIMITS {
        for k in [2, 3, 5] {
            let s = starting_sieve(k, 3, limit);
            group.throughput(Throughput::Bytes(limit / 8));
            group.bench_with_input(BenchmarkId::new(format!("k{k}"), limit), &s, |b, s| {
                b.iter(|| black_box(s.advance()))
            });
        }
    }
    group.finish();
}

fn stabilization(c: &mut Criterion) {
    let mut group = c.benchmark_group("stabilize");
    group.sample_size(10);
    // the same runs the acceptance checks make
    for (k, limit, jmax) in [(2, 10_000, 12), (3, 100_000, 20), (4, 100_000, 30), (5, 20_000, 70)] {
        group.bench_function(BenchmarkId::new(format!("k{k}"), limit), |b| {
            b.iter(|| black_box(stabilize(k, limit, jmax).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, advance, stabilization);
criterion_main!(benches);
