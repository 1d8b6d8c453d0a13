// SPDX-License-Identifier: Apache-2.0

//! Monte Carlo campaigns.
//!
//! Trials are cut into fixed chunks; each chunk is simulated on its own and
//! the chunk results are summed. Trial `t` always uses random stream `t`, so
//! the totals are identical for every worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::{DistanceParity, HammingLevelCode, SurfaceLattice};
use crate::concat::{Base, ConcatenationSchema};
use crate::decode::{mwpm_match, ConcatenatedDecoder, DecodeScratch, DefectSet, PackedLevel};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::sim::rng::{trial_rng, ErrorModel, TrialRng};
use crate::sim::stats::{RateEstimate, TrialStats};

/// Trials per work unit.
pub const CHUNK_TRIALS: u64 = 256;

/// How trials are scheduled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Execution {
    /// Everything on the calling thread.
    #[default]
    Sequential,
    /// A dedicated pool of `workers` threads (`0` picks the core count).
    Parallel { workers: usize },
}

impl Execution {
    /// `1` means sequential.
    pub fn with_workers(workers: usize) -> Self {
        if workers == 1 {
            Execution::Sequential
        } else {
            Execution::Parallel { workers }
        }
    }
}

/// Rate and raw counts of one campaign.
#[derive(Clone, Debug)]
pub struct CampaignResult {
    pub estimate: RateEstimate,
    pub stats: TrialStats,
}

/// Runs `trials` trials. `init` builds per-chunk state; `trial` fills the
/// sorted list of failed logical qubits for one trial.
pub fn run_trials<S, I, F>(
    trials: u64,
    seed: u64,
    execution: Execution,
    num_logicals: usize,
    init: I,
    trial: F,
) -> Result<TrialStats>
where
    I: Fn() -> S + Sync,
    F: Fn(&mut S, &mut TrialRng, &mut Vec<usize>) + Sync,
{
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let run_chunk = |c: u64| {
        let mut state = init();
        let mut stats = TrialStats::new(num_logicals);
        let mut failed = Vec::new();
        for t in c * CHUNK_TRIALS..((c + 1) * CHUNK_TRIALS).min(trials) {
            let mut rng = trial_rng(seed, t);
            failed.clear();
            trial(&mut state, &mut rng, &mut failed);
            stats.record(&failed);
        }
        stats
    };
    let merge = |mut a: TrialStats, b: TrialStats| {
        a.merge(&b).expect("chunks share the qubit count");
        a
    };
    match execution {
        Execution::Sequential => Ok((0..chunks).map(run_chunk).fold(TrialStats::new(num_logicals), merge)),
        Execution::Parallel { workers } => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::Internal(format!("worker pool: {e}")))?;
            Ok(pool.install(|| {
                (0..chunks)
                    .into_par_iter()
                    .map(run_chunk)
                    .reduce(|| TrialStats::new(num_logicals), merge)
            }))
        }
    }
}

fn check_p(p: f64) -> Result<ErrorModel> {
    ErrorModel::new(p)
}

/// Concatenated Hamming code of `level` (Steane base) under physical
/// bit flips. A trial fails when any of its logical qubits fails.
pub fn run_hamming_campaign(
    level: usize,
    p: f64,
    trials: u64,
    seed: u64,
    execution: Execution,
) -> Result<CampaignResult> {
    if !(1..=3).contains(&level) {
        return Err(Error::param("level", format!("must be in 1..=3, got {level}")));
    }
    let schema = ConcatenationSchema::build(level, Base::Steane)?;
    run_schema_campaign(&schema, p, trials, seed, execution)
}

/// Drives any schema with i.i.d. flips of probability `p` on its input
/// frame (physical qubits for a Steane base, patches for a surface base).
pub fn run_schema_campaign(
    schema: &ConcatenationSchema,
    p: f64,
    trials: u64,
    seed: u64,
    execution: Execution,
) -> Result<CampaignResult> {
    let model = check_p(p)?;
    let decoder = ConcatenatedDecoder::new(schema)?;
    let n_in = decoder.input_len();
    let block = decoder.lowest_block_len();
    let k_top = decoder.output_word_bits();
    let stats = run_trials(
        trials,
        seed,
        execution,
        decoder.total_logical(),
        || (vec![0u64; decoder.input_words()], DecodeScratch::new()),
        |(input, scratch), rng, failed| {
            input.fill(0);
            model.for_each_flip(n_in, rng, |j| input[j / block] |= 1 << (j % block));
            let out = decoder.decode(input, scratch);
            push_failed_words(out, k_top, failed);
        },
    )?;
    Ok(CampaignResult {
        estimate: stats.estimate(seed)?,
        stats,
    })
}

/// One level-`level` Hamming block on physical qubits (level 1 is the
/// `[[15,7,3]]` code).
pub fn run_block_campaign(
    level: usize,
    p: f64,
    trials: u64,
    seed: u64,
    execution: Execution,
) -> Result<CampaignResult> {
    let model = check_p(p)?;
    let code = HammingLevelCode::build(level)?;
    let packed = PackedLevel::new(&code)?;
    let n = packed.block_len();
    let stats = run_trials(
        trials,
        seed,
        execution,
        packed.num_logicals(),
        || (),
        |_, rng, failed| {
            let mut word = 0u64;
            model.for_each_flip(n, rng, |j| word |= 1 << j);
            push_failed_words(&[packed.decode(word)], 64, failed);
        },
    )?;
    Ok(CampaignResult {
        estimate: stats.estimate(seed)?,
        stats,
    })
}

fn push_failed_words(words: &[u64], bits_per_word: usize, failed: &mut Vec<usize>) {
    for (b, &w) in words.iter().enumerate() {
        let mut w = w;
        while w != 0 {
            failed.push(b * bits_per_word + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
}

/// Logical failure rate `P_sur(d, p)` of a single surface-code patch under
/// matching decoding. Even distances are accepted.
pub fn estimate_surface_rate(
    d: usize,
    p: f64,
    trials: u64,
    seed: u64,
    execution: Execution,
) -> Result<RateEstimate> {
    let model = check_p(p)?;
    let lattice = SurfaceLattice::with_parity(d, DistanceParity::AllowEven)?;
    let n = lattice.num_data();
    let checks = lattice.num_checks();
    let stats = run_trials(
        trials,
        seed,
        execution,
        1,
        || (Vec::new(), vec![false; checks]),
        |(flips, syndrome): &mut (Vec<usize>, Vec<bool>), rng, failed| {
            flips.clear();
            model.for_each_flip(n, rng, |q| flips.push(q));
            if surface_trial_fails(&lattice, flips, syndrome) {
                failed.push(0);
            }
        },
    )?;
    stats.estimate(seed)
}

/// Decodes one bit-flip pattern given by its flipped qubits.
pub(crate) fn surface_trial_fails(lattice: &SurfaceLattice, flips: &[usize], syndrome: &mut [bool]) -> bool {
    if flips.is_empty() {
        return false;
    }
    syndrome.fill(false);
    for &q in flips {
        for &c in &lattice.data_checks()[q] {
            syndrome[c] ^= true;
        }
    }
    let defects = DefectSet::new((0..syndrome.len()).filter(|&c| syndrome[c]).collect());
    let outcome = mwpm_match(&defects, lattice).expect("defects come from a valid syndrome");
    let logical = lattice.logical_z();
    let error_parity = flips.iter().filter(|&&q| logical.get(q)).count() % 2 == 1;
    error_parity ^ outcome.correction.parity_dot(logical).expect("lengths match")
}

/// Cached `P_sur(d, p)` values, looked up on the exact `p` grid.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRateTable {
    entries: Vec<SurfaceRateEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRateEntry {
    pub d: usize,
    pub p: f64,
    pub rate: f64,
}

impl SurfaceRateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, d: usize, p: f64, rate: f64) -> Result<()> {
        check_p(rate).map_err(|_| Error::param("rate", format!("{rate} not in [0, 1]")))?;
        self.entries.retain(|e| !(e.d == d && same_p(e.p, p)));
        self.entries.push(SurfaceRateEntry { d, p, rate });
        Ok(())
    }

    /// The stored rate; a missing entry is a precondition error rather than
    /// an interpolated guess.
    pub fn get(&self, d: usize, p: f64) -> Result<f64> {
        self.entries
            .iter()
            .find(|e| e.d == d && same_p(e.p, p))
            .map(|e| e.rate)
            .ok_or_else(|| Error::Precondition(format!("no surface rate for d={d}, p={p}")))
    }

    pub fn entries(&self) -> &[SurfaceRateEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn same_p(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Surface-Hamming code: each of the base patches fails independently with
/// probability `p_sur`, and the patch failures are decoded by Hamming levels
/// `1..=level`.
pub fn run_surface_hamming_campaign(
    d: usize,
    level: usize,
    p_sur: f64,
    trials: u64,
    seed: u64,
    execution: Execution,
) -> Result<CampaignResult> {
    if level == 0 {
        return Err(Error::param("level", "surface-Hamming codes need at least one Hamming level"));
    }
    let schema = ConcatenationSchema::build(level, Base::Surface { d })?;
    run_schema_campaign(&schema, p_sur, trials, seed, execution)
}

/// [`run_surface_hamming_campaign`] with `P_sur` read from a table.
pub fn run_surface_hamming_from_table(
    table: &SurfaceRateTable,
    d: usize,
    level: usize,
    p: f64,
    trials: u64,
    seed: u64,
    execution: Execution,
) -> Result<CampaignResult> {
    let p_sur = table.get(d, p)?;
    run_surface_hamming_campaign(d, level, p_sur, trials, seed, execution)
}

/// Bits of a trial's error frame, for tests and tools that replay trials.
pub fn replay_frame(n: usize, p: f64, seed: u64, trial: u64) -> Result<BitVector> {
    Ok(crate::sim::rng::sample_errors(n, check_p(p)?, seed, trial))
}
