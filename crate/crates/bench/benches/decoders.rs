// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use surfham_bench::{hamming_inputs, surface_inputs, BENCH_P};
use surfham_core::decode::{mwpm_match, DecodeScratch};

const POOL: u64 = 512;

fn hamming(c: &mut Criterion) {
    let mut group = c.benchmark_group("hamming");
    for level in 1..=3 {
        let (decoder, frames) = hamming_inputs(level, BENCH_P, POOL, 1).expect("inputs");
        let mut scratch = DecodeScratch::new();
        let mut i = 0;
        group.bench_function(BenchmarkId::new("sequential", level), |b| {
            b.iter(|| {
                i = (i + 1) % frames.len();
                black_box(decoder.decode(black_box(&frames[i]), &mut scratch)[0])
            })
        });
        let mut i = 0;
        group.bench_function(BenchmarkId::new("parallel", level), |b| {
            b.iter(|| {
                i = (i + 1) % frames.len();
                black_box(decoder.decode_parallel(black_box(&frames[i]))[0])
            })
        });
    }
    group.finish();
}

fn matching(c: &mut Criterion) {
    let mut group = c.benchmark_group("matching");
    for d in [5, 7, 9] {
        let (lattice, defects) = surface_inputs(d, BENCH_P, POOL, 1).expect("inputs");
        let mut i = 0;
        group.bench_function(BenchmarkId::new("sequential", d), |b| {
            b.iter(|| {
                i = (i + 1) % defects.len();
                black_box(mwpm_match(black_box(&defects[i]), &lattice).expect("matchable").weight)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, hamming, matching);
criterion_main!(benches);
