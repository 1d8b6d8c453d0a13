// SPDX-License-Identifier: Apache-2.0

//! Command-line definitions. Every subcommand is serializable so that a run
//! manifest can carry it and replay it.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "surfham", version, about = "Concatenated Hamming and surface-Hamming code simulator")]
pub struct Cli {
    /// Worker threads for Monte Carlo trials (1 = sequential, 0 = all cores).
    #[arg(long, global = true, env = "SURFHAM_WORKERS", default_value_t = 0)]
    pub workers: usize,

    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    /// Manifest path; defaults to `<out>.manifest.json` when `--out` is set.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Logical error rates over a grid of physical error rates.
    Sweep(SweepArgs),
    /// Crossing points between successive levels of a sweep CSV.
    Threshold(ThresholdArgs),
    /// Pairwise and set correlations of logical failures in one block.
    Correlations(BlockArgs),
    /// Locally-decaying check of logical failures in one block.
    Decay(BlockArgs),
    /// Failure rate of every logical qubit of one block.
    Perqubit(BlockArgs),
    /// Physical qubits per logical qubit.
    Overhead(OverheadArgs),
    /// Logical-operator matrix of a Hamming code.
    Logicals(LogicalsArgs),
    /// Single-patch surface-code logical error rates.
    SurfaceRate(SurfaceRateArgs),
    /// Decode-time comparison of Hamming and matching decoders.
    Bench(BenchArgs),
    /// SVG line chart from a CSV file.
    Plot(PlotArgs),
    /// Re-runs the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Hamming,
    SurfaceHamming,
}

impl CodeKind {
    pub fn name(self) -> &'static str {
        match self {
            CodeKind::Hamming => "hamming",
            CodeKind::SurfaceHamming => "surface-hamming",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub code: CodeKind,
    /// Comma-separated concatenation levels.
    #[arg(long, default_value = "1,2")]
    pub levels: String,
    /// Surface distance (surface-hamming only).
    #[arg(long)]
    pub d: Option<usize>,
    /// Physical error rates: `a:b` (log grid) or a comma list.
    #[arg(long)]
    pub p: String,
    /// Grid points for an `a:b` range.
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Trials per surface-patch rate estimate (defaults to `--trials`).
    #[arg(long)]
    pub surface_trials: Option<u64>,
    /// Precomputed surface rates (CSV from `surface-rate`).
    #[arg(long)]
    pub surface_table: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct ThresholdArgs {
    /// Sweep CSV.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct BlockArgs {
    /// Hamming level of the block (1 is the [[15,7,3]] code).
    #[arg(long, default_value_t = 1)]
    pub level: usize,
    #[arg(long, default_value_t = 0.08)]
    pub p: f64,
    #[arg(long, default_value_t = 20_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Set sizes for set-vs-qubit correlations (correlations only).
    #[arg(long, default_value = "")]
    pub sets: String,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct OverheadArgs {
    /// Comma-separated surface distances.
    #[arg(long, default_value = "3,4,5")]
    pub d: String,
    /// Highest level.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct LogicalsArgs {
    /// Check bits: 3, 4 or 5.
    #[arg(long)]
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct SurfaceRateArgs {
    /// Comma-separated distances (even ones allowed).
    #[arg(long)]
    pub d: String,
    #[arg(long)]
    pub p: String,
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct BenchArgs {
    /// `level:distance` pairs.
    #[arg(long, default_value = "1:5,2:7,3:9")]
    pub pairs: String,
    #[arg(long, default_value_t = 0.01526)]
    pub p: f64,
    /// Timed decodes per decoder and mode.
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    /// Untimed warm-up decodes.
    #[arg(long, default_value_t = 100)]
    pub warmup: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct PlotArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "p")]
    pub x: String,
    #[arg(long, default_value = "p_logical")]
    pub y: String,
    /// Column naming the series; one series when omitted.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    #[arg(id = "source", value_name = "MANIFEST")]
    pub manifest: PathBuf,
}
