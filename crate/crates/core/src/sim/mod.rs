// SPDX-License-Identifier: Apache-2.0

//! Noise sampling, Monte Carlo campaigns and their statistics.

mod analysis;
mod campaign;
mod rng;
mod stats;
mod threshold;

pub use analysis::{
    decay_check, fisher_interval, indicator_correlation, pearson_pairs, per_qubit_rates, rate_spread,
    set_correlations, CorrelationReport, DecayReport, PairCorrelation, SetCorrelation,
};
pub use campaign::{
    estimate_surface_rate, replay_frame, run_block_campaign, run_hamming_campaign,
    run_schema_campaign, run_surface_hamming_campaign, run_surface_hamming_from_table, run_trials,
    CampaignResult, Execution, SurfaceRateEntry, SurfaceRateTable, CHUNK_TRIALS,
};
pub use rng::{sample_errors, trial_rng, ErrorModel, TrialRng};
pub use stats::{
    normal_quantile, wilson_ci, RateEstimate, TrialStats, MAX_PAIR_QUBITS, MAX_PATTERN_QUBITS,
};
pub use threshold::{crossings, threshold_crossing, CurvePoint, Crossing, ThresholdEstimate};
