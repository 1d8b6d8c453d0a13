// SPDX-License-Identifier: Apache-2.0

//! Decode-time comparison between the concatenated Hamming decoder and
//! surface-code matching at a common physical error rate.
//!
//! Only the decode call is timed. Error sampling and syndrome extraction
//! happen outside the timed region; sampling time is reported separately.

use std::time::Instant;

use anyhow::{ensure, Context, Result};
use serde::{Deserialize, Serialize};
use surfham_core::concat::{Base, ConcatenationSchema};
use surfham_core::decode::{mwpm_match, ConcatenatedDecoder, DecodeScratch, DefectSet};
use surfham_core::sim::{trial_rng, ErrorModel};
use surfham_core::SurfaceLattice;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingRecord {
    /// `hamming-<level>` or `surface-<d>`.
    pub decoder: String,
    /// `sequential` or `parallel`.
    pub mode: String,
    pub trials: u64,
    pub mean_ns: f64,
    pub std_ns: f64,
    /// Mean time spent sampling one error pattern (not part of `mean_ns`).
    pub sampling_mean_ns: f64,
}

/// Running mean and variance.
#[derive(Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn std(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64).sqrt()
        }
    }
}

pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (l, d) = s.split_once(':').with_context(|| format!("--pairs: expected level:d, got `{s}`"))?;
            Ok((
                l.parse().with_context(|| format!("--pairs: bad level `{l}`"))?,
                d.parse().with_context(|| format!("--pairs: bad distance `{d}`"))?,
            ))
        })
        .collect()
}

/// Times every pairing: the Hamming decoder sequentially and with blocks
/// spread over a worker pool, and matching on the surface patch.
pub fn bench_decoders(
    pairs: &[(usize, usize)],
    p: f64,
    trials: u64,
    warmup: u64,
    seed: u64,
) -> Result<Vec<TimingRecord>> {
    ensure!(trials >= 1, "--trials must be positive");
    let model = ErrorModel::new(p).context("--p")?;
    let mut out = Vec::new();
    for &(level, d) in pairs {
        ensure!((1..=3).contains(&level), "--pairs: Hamming level {level} not in 1..=3");
        let schema = ConcatenationSchema::build(level, Base::Steane)?;
        let decoder = ConcatenatedDecoder::new(&schema)?;
        out.push(time_hamming(&decoder, level, model, trials, warmup, seed, false));
        out.push(time_hamming(&decoder, level, model, trials, warmup, seed, true));
        let lattice = SurfaceLattice::new(d).with_context(|| format!("--pairs: distance {d}"))?;
        out.push(time_matching(&lattice, model, trials, warmup, seed));
    }
    Ok(out)
}

fn time_hamming(
    decoder: &ConcatenatedDecoder,
    level: usize,
    model: ErrorModel,
    trials: u64,
    warmup: u64,
    seed: u64,
    parallel: bool,
) -> TimingRecord {
    let n = decoder.input_len();
    let block = decoder.lowest_block_len();
    let mut input = vec![0u64; decoder.input_words()];
    let mut scratch = DecodeScratch::new();
    let mut decode = Welford::default();
    let mut sample = Welford::default();
    let mut sink = 0u64;
    for t in 0..warmup + trials {
        let start = Instant::now();
        input.fill(0);
        let mut rng = trial_rng(seed, t);
        model.for_each_flip(n, &mut rng, |j| input[j / block] |= 1 << (j % block));
        let sampled = start.elapsed();
        let start = Instant::now();
        let first = if parallel {
            decoder.decode_parallel(&input)[0]
        } else {
            decoder.decode(&input, &mut scratch)[0]
        };
        let elapsed = start.elapsed();
        sink ^= first;
        if t >= warmup {
            decode.push(elapsed.as_nanos() as f64);
            sample.push(sampled.as_nanos() as f64);
        }
    }
    std::hint::black_box(sink);
    TimingRecord {
        decoder: format!("hamming-{level}"),
        mode: if parallel { "parallel" } else { "sequential" }.into(),
        trials,
        mean_ns: decode.mean,
        std_ns: decode.std(),
        sampling_mean_ns: sample.mean,
    }
}

fn time_matching(lattice: &SurfaceLattice, model: ErrorModel, trials: u64, warmup: u64, seed: u64) -> TimingRecord {
    let n = lattice.num_data();
    let mut syndrome = vec![false; lattice.num_checks()];
    let mut decode = Welford::default();
    let mut sample = Welford::default();
    let mut sink = 0u32;
    for t in 0..warmup + trials {
        let start = Instant::now();
        syndrome.fill(false);
        let mut rng = trial_rng(seed, t);
        model.for_each_flip(n, &mut rng, |q| {
            for &c in &lattice.data_checks()[q] {
                syndrome[c] ^= true;
            }
        });
        let defects = DefectSet::new((0..syndrome.len()).filter(|&c| syndrome[c]).collect());
        let sampled = start.elapsed();
        let start = Instant::now();
        let outcome = mwpm_match(&defects, lattice).expect("valid syndrome");
        let elapsed = start.elapsed();
        sink ^= outcome.weight;
        if t >= warmup {
            decode.push(elapsed.as_nanos() as f64);
            sample.push(sampled.as_nanos() as f64);
        }
    }
    std::hint::black_box(sink);
    TimingRecord {
        decoder: format!("surface-{}", lattice.distance()),
        mode: "sequential".into(),
        trials,
        mean_ns: decode.mean,
        std_ns: decode.std(),
        sampling_mean_ns: sample.mean,
    }
}
