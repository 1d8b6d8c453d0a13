// SPDX-License-Identifier: Apache-2.0

//! Correlation, per-qubit and decay analyses of logical failures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::stats::{normal_quantile, RateEstimate, TrialStats};

/// Pearson coefficient of two indicator variables from their marginals and
/// joint probability. `None` when either marginal is 0 or 1.
pub fn indicator_correlation(p_a: f64, p_b: f64, p_ab: f64) -> Option<f64> {
    let var = p_a * (1.0 - p_a) * p_b * (1.0 - p_b);
    if var <= 0.0 {
        return None;
    }
    Some(((p_ab - p_a * p_b) / var.sqrt()).clamp(-1.0, 1.0))
}

/// Fisher-z interval for a correlation estimated from `n` samples.
pub fn fisher_interval(rho: f64, n: u64, confidence: f64) -> Result<(f64, f64)> {
    if n < 4 {
        return Err(Error::param("trials", format!("need at least 4 samples, got {n}")));
    }
    let z = normal_quantile(confidence)?;
    if rho.abs() >= 1.0 {
        return Ok((rho, rho));
    }
    let centre = rho.atanh();
    let half = z / ((n - 3) as f64).sqrt();
    Ok(((centre - half).tanh(), (centre + half).tanh()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairCorrelation {
    pub i: usize,
    pub j: usize,
    pub joint: f64,
    /// `None` marks an undefined coefficient.
    pub rho: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetCorrelation {
    /// Qubits that must all fail for the set indicator to be 1.
    pub set: Vec<usize>,
    pub target: usize,
    pub rho: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub trials: u64,
    pub marginals: Vec<f64>,
    pub pairs: Vec<PairCorrelation>,
    pub sets: Vec<SetCorrelation>,
}

impl CorrelationReport {
    /// Mean over defined pair coefficients.
    pub fn mean_pair_rho(&self) -> Option<f64> {
        let defined: Vec<f64> = self.pairs.iter().filter_map(|p| p.rho).collect();
        (!defined.is_empty()).then(|| defined.iter().sum::<f64>() / defined.len() as f64)
    }

    /// True when every pair has a defined coefficient whose 95% interval
    /// lies above zero.
    pub fn all_pairs_positive(&self) -> bool {
        !self.pairs.is_empty() && self.pairs.iter().all(|p| p.ci_low.is_some_and(|lo| lo > 0.0))
    }
}

/// Pairwise Pearson coefficients between per-qubit failure indicators.
pub fn pearson_pairs(stats: &TrialStats) -> Result<CorrelationReport> {
    if stats.trials() < 2 {
        return Err(Error::param("trials", "need at least 2 trials"));
    }
    if !stats.has_pairs() {
        return Err(Error::Precondition(format!(
            "pair counts were not kept for {} logical qubits",
            stats.num_logicals()
        )));
    }
    let n = stats.trials() as f64;
    let k = stats.num_logicals();
    let marginals: Vec<f64> = stats.per_qubit().iter().map(|&c| c as f64 / n).collect();
    let mut pairs = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            let joint = stats.pair_count(i, j).expect("pairs kept") as f64 / n;
            let rho = indicator_correlation(marginals[i], marginals[j], joint);
            let ci = match rho {
                Some(r) if stats.trials() >= 4 => Some(fisher_interval(r, stats.trials(), 0.95)?),
                _ => None,
            };
            pairs.push(PairCorrelation {
                i,
                j,
                joint,
                rho,
                ci_low: ci.map(|c| c.0),
                ci_high: ci.map(|c| c.1),
            });
        }
    }
    Ok(CorrelationReport {
        trials: stats.trials(),
        marginals,
        pairs,
        sets: Vec::new(),
    })
}

/// Coefficients between "every qubit of the set failed" and each single
/// qubit, for every set of the given sizes.
pub fn set_correlations(stats: &TrialStats, sizes: &[usize]) -> Result<Vec<SetCorrelation>> {
    if stats.trials() < 2 {
        return Err(Error::param("trials", "need at least 2 trials"));
    }
    if stats.pattern_counts().is_none() {
        return Err(Error::Precondition(format!(
            "failure patterns were not kept for {} logical qubits",
            stats.num_logicals()
        )));
    }
    let k = stats.num_logicals();
    let n = stats.trials() as f64;
    let prob = |mask: usize| stats.superset_count(mask).expect("patterns kept") as f64 / n;
    let mut out = Vec::new();
    for &size in sizes {
        if size == 0 || size > k {
            return Err(Error::param("sizes", format!("set size {size} not in 1..={k}")));
        }
        for mask in (0usize..1 << k).filter(|m| m.count_ones() as usize == size) {
            let p_set = prob(mask);
            let set: Vec<usize> = (0..k).filter(|&q| mask >> q & 1 == 1).collect();
            for target in 0..k {
                let p_t = prob(1 << target);
                let p_joint = prob(mask | 1 << target);
                out.push(SetCorrelation {
                    set: set.clone(),
                    target,
                    rho: indicator_correlation(p_set, p_t, p_joint),
                });
            }
        }
    }
    Ok(out)
}

/// One failure-rate estimate per logical qubit.
pub fn per_qubit_rates(stats: &TrialStats, seed: u64) -> Result<Vec<RateEstimate>> {
    stats
        .per_qubit()
        .iter()
        .map(|&c| RateEstimate::from_counts(c, stats.trials(), seed))
        .collect()
}

/// Ratio between the largest and smallest per-qubit rate; `None` when some
/// qubit never failed.
pub fn rate_spread(rates: &[RateEstimate]) -> Option<f64> {
    let max = rates.iter().map(|r| r.p_hat).fold(f64::NEG_INFINITY, f64::max);
    let min = rates.iter().map(|r| r.p_hat).fold(f64::INFINITY, f64::min);
    (min > 0.0).then(|| max / min)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    /// `(i, p_i)`: probability that one given set of exactly `i` logical
    /// qubits fails while the others do not, for every observed `i ≥ 1`.
    pub p_i: Vec<(usize, f64)>,
    /// `max_i p_i^{1/i}`, `0` without failures.
    pub rate: f64,
    /// Whether `p_i ≤ rate^i` for every observed `i`.
    pub bounded: bool,
}

impl DecayReport {
    pub fn from_subset_probabilities(p_i: Vec<(usize, f64)>) -> Self {
        let rate = p_i
            .iter()
            .filter(|&&(i, p)| i > 0 && p > 0.0)
            .map(|&(i, p)| p.powf(1.0 / i as f64))
            .fold(0.0, f64::max);
        let bounded = p_i.iter().all(|&(i, p)| p <= rate.powi(i as i32) * (1.0 + 1e-12));
        Self { p_i, rate, bounded }
    }

    /// Whether every `p_i` respects `bound^i`.
    pub fn decays_with(&self, bound: f64) -> bool {
        self.p_i.iter().all(|&(i, p)| p <= bound.powi(i as i32))
    }
}

/// Locally-decaying check, assuming sets of equal size fail equally often:
/// `p_i = h_i / (trials · C(k, i))` with `h_i` the number of trials where
/// exactly `i` qubits failed.
pub fn decay_check(stats: &TrialStats) -> Result<DecayReport> {
    if stats.trials() == 0 {
        return Err(Error::param("trials", "need at least 1 trial"));
    }
    let k = stats.num_logicals();
    let n = stats.trials() as f64;
    let p_i = stats
        .weight_histogram()
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &h)| h > 0)
        .map(|(i, &h)| (i, h as f64 / (n * binomial(k, i))))
        .collect();
    Ok(DecayReport::from_subset_probabilities(p_i))
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::rng::trial_rng;
    use rand::Rng;

    fn stats_from(rows: &[Vec<usize>], k: usize) -> TrialStats {
        let mut s = TrialStats::new(k);
        rows.iter().for_each(|r| s.record(r));
        s
    }

    #[test]
    fn duplicated_bits_correlate_fully() {
        let mut rng = trial_rng(1, 0);
        let rows: Vec<Vec<usize>> = (0..500)
            .map(|_| if rng.random_bool(0.3) { vec![0, 1] } else { vec![] })
            .collect();
        let r = pearson_pairs(&stats_from(&rows, 2)).unwrap();
        assert!((r.pairs[0].rho.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn independent_bits_are_uncorrelated() {
        let mut rng = trial_rng(2, 0);
        let rows: Vec<Vec<usize>> = (0..40_000)
            .map(|_| (0..3).filter(|_| rng.random_bool(0.2)).collect())
            .collect();
        let r = pearson_pairs(&stats_from(&rows, 3)).unwrap();
        for p in &r.pairs {
            assert!(p.rho.unwrap().abs() < 0.03, "{p:?}");
        }
        let sets = set_correlations(&stats_from(&rows, 3), &[2]).unwrap();
        for s in sets.iter().filter(|s| !s.set.contains(&s.target)) {
            assert!(s.rho.unwrap().abs() < 0.03, "{s:?}");
        }
    }

    #[test]
    fn degenerate_marginals_are_flagged() {
        let rows = vec![vec![0], vec![0], vec![0]];
        let r = pearson_pairs(&stats_from(&rows, 2)).unwrap();
        assert_eq!(r.pairs[0].rho, None);
        assert!(!r.all_pairs_positive());
        assert!(pearson_pairs(&stats_from(&rows[..1], 2)).is_err());
    }

    #[test]
    fn singleton_set_matches_itself() {
        let rows = vec![vec![0], vec![1], vec![0, 1], vec![]];
        let sets = set_correlations(&stats_from(&rows, 2), &[1]).unwrap();
        let own = sets.iter().find(|s| s.set == [1] && s.target == 1).unwrap();
        assert!((own.rho.unwrap() - 1.0).abs() < 1e-12);
        assert!(set_correlations(&stats_from(&rows, 2), &[3]).is_err());
    }

    #[test]
    fn per_qubit_injection() {
        let rows = vec![vec![2], vec![], vec![2], vec![]];
        let rates = per_qubit_rates(&stats_from(&rows, 4), 0).unwrap();
        let nonzero: Vec<usize> = (0..4).filter(|&i| rates[i].failures > 0).collect();
        assert_eq!(nonzero, vec![2]);
        assert_eq!(rate_spread(&rates), None);
        let zero = per_qubit_rates(&stats_from(&[vec![], vec![]], 3), 0).unwrap();
        assert!(zero.iter().all(|r| r.p_hat == 0.0));
    }

    #[test]
    fn decay_examples() {
        let none = decay_check(&stats_from(&[vec![], vec![]], 5)).unwrap();
        assert_eq!(none.rate, 0.0);
        assert!(none.bounded);

        let exact = DecayReport::from_subset_probabilities((1..=5).map(|i| (i, 0.2f64.powi(i as i32))).collect());
        assert!((exact.rate - 0.2).abs() < 1e-12);
        assert!(exact.bounded);
        assert!(exact.decays_with(0.2 + 1e-9));
        assert!(!exact.decays_with(0.19));

        // Three qubits; exactly-one failures 3 times, one pair once.
        let rows = vec![vec![0], vec![1], vec![2], vec![0, 2], vec![], vec![], vec![], vec![]];
        let r = decay_check(&stats_from(&rows, 3)).unwrap();
        assert_eq!(r.p_i, vec![(1, 3.0 / 24.0), (2, 1.0 / 24.0)]);
        assert!((r.rate - (1.0f64 / 24.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fisher_interval_brackets_rho() {
        let (lo, hi) = fisher_interval(0.4, 20_000, 0.95).unwrap();
        assert!(lo < 0.4 && 0.4 < hi);
        assert!(hi - lo < 0.03);
        assert!(fisher_interval(0.4, 3, 0.95).is_err());
    }
}
