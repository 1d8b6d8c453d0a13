// SPDX-License-Identifier: Apache-2.0

//! Counts gathered by Monte Carlo campaigns and binomial intervals.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};

/// Pair counts are kept for at most this many logical qubits.
pub const MAX_PAIR_QUBITS: usize = 256;
/// Full failure-pattern histograms are kept for at most this many.
pub const MAX_PATTERN_QUBITS: usize = 16;

/// Two-sided normal quantile for a central `confidence` interval.
pub fn normal_quantile(confidence: f64) -> Result<f64> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::param("confidence", format!("{confidence} not in (0, 1)")));
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(0.5 + confidence / 2.0))
}

/// Wilson score interval for `failures` out of `trials`.
pub fn wilson_ci(failures: u64, trials: u64, confidence: f64) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::param("trials", "must be at least 1"));
    }
    if failures > trials {
        return Err(Error::param(
            "failures",
            format!("{failures} exceeds trial count {trials}"),
        ));
    }
    let z = normal_quantile(confidence)?;
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if failures == 0 { 0.0 } else { (centre - half).max(0.0) };
    let high = if failures == trials { 1.0 } else { (centre + half).min(1.0) };
    Ok((low.min(p), high.max(p)))
}

/// Failure rate with a 95% Wilson interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub trials: u64,
    pub failures: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl RateEstimate {
    pub fn from_counts(failures: u64, trials: u64, seed: u64) -> Result<Self> {
        let (ci_low, ci_high) = wilson_ci(failures, trials, 0.95)?;
        Ok(Self {
            trials,
            failures,
            p_hat: failures as f64 / trials as f64,
            ci_low,
            ci_high,
            seed,
        })
    }

    /// Binomial standard error at the point estimate.
    pub fn std_error(&self) -> f64 {
        (self.p_hat * (1.0 - self.p_hat) / self.trials as f64).sqrt()
    }

    /// True when the two 95% intervals are disjoint.
    pub fn separated_from(&self, other: &RateEstimate) -> bool {
        self.ci_high < other.ci_low || other.ci_high < self.ci_low
    }
}

/// Aggregated per-trial logical-failure data.
///
/// Merging is plain integer addition, so the result does not depend on how
/// trials were split between workers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialStats {
    num_logicals: usize,
    trials: u64,
    failures: u64,
    per_qubit: Vec<u64>,
    /// Entry `w`: trials in which exactly `w` logical qubits failed.
    weight_histogram: Vec<u64>,
    /// Joint failures of `(i, j)`, `i < j`, row-major upper triangle.
    pair_counts: Option<Vec<u64>>,
    /// Trials per failure pattern (bit `i` = qubit `i` failed).
    pattern_counts: Option<Vec<u64>>,
}

impl TrialStats {
    /// Empty stats; pair and pattern tables are kept when the qubit count
    /// is small enough.
    pub fn new(num_logicals: usize) -> Self {
        let pairs = num_logicals <= MAX_PAIR_QUBITS;
        let patterns = num_logicals <= MAX_PATTERN_QUBITS;
        Self {
            num_logicals,
            trials: 0,
            failures: 0,
            per_qubit: vec![0; num_logicals],
            weight_histogram: vec![0; num_logicals + 1],
            pair_counts: pairs.then(|| vec![0; num_logicals * num_logicals.saturating_sub(1) / 2]),
            pattern_counts: patterns.then(|| vec![0; 1 << num_logicals]),
        }
    }

    /// Records one trial given the sorted, distinct indices of its failed
    /// logical qubits.
    pub fn record(&mut self, failed: &[usize]) {
        debug_assert!(failed.windows(2).all(|w| w[0] < w[1]));
        self.trials += 1;
        self.weight_histogram[failed.len()] += 1;
        if failed.is_empty() {
            if let Some(p) = &mut self.pattern_counts {
                p[0] += 1;
            }
            return;
        }
        self.failures += 1;
        for &i in failed {
            self.per_qubit[i] += 1;
        }
        if let Some(pairs) = &mut self.pair_counts {
            let k = self.num_logicals;
            for (a, &i) in failed.iter().enumerate() {
                for &j in &failed[a + 1..] {
                    pairs[pair_index(k, i, j)] += 1;
                }
            }
        }
        if let Some(p) = &mut self.pattern_counts {
            let mask = failed.iter().fold(0usize, |m, &i| m | 1 << i);
            p[mask] += 1;
        }
    }

    pub fn merge(&mut self, other: &TrialStats) -> Result<()> {
        if self.num_logicals != other.num_logicals {
            return Err(Error::dim("merged stats", self.num_logicals, other.num_logicals));
        }
        self.trials += other.trials;
        self.failures += other.failures;
        add_into(&mut self.per_qubit, &other.per_qubit);
        add_into(&mut self.weight_histogram, &other.weight_histogram);
        if let (Some(a), Some(b)) = (&mut self.pair_counts, &other.pair_counts) {
            add_into(a, b);
        }
        if let (Some(a), Some(b)) = (&mut self.pattern_counts, &other.pattern_counts) {
            add_into(a, b);
        }
        Ok(())
    }

    pub fn num_logicals(&self) -> usize {
        self.num_logicals
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    /// Trials in which at least one logical qubit failed.
    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn per_qubit(&self) -> &[u64] {
        &self.per_qubit
    }

    pub fn weight_histogram(&self) -> &[u64] {
        &self.weight_histogram
    }

    /// Joint failure count of qubits `i` and `j`, when pair counts are kept.
    pub fn pair_count(&self, i: usize, j: usize) -> Option<u64> {
        let pairs = self.pair_counts.as_ref()?;
        if i == j {
            return Some(self.per_qubit[i]);
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        Some(pairs[pair_index(self.num_logicals, a, b)])
    }

    pub fn has_pairs(&self) -> bool {
        self.pair_counts.is_some()
    }

    pub fn pattern_counts(&self) -> Option<&[u64]> {
        self.pattern_counts.as_deref()
    }

    /// Trials in which every qubit of `mask` failed (others unrestricted).
    pub fn superset_count(&self, mask: usize) -> Option<u64> {
        let patterns = self.pattern_counts.as_ref()?;
        Some(
            patterns
                .iter()
                .enumerate()
                .filter(|&(m, _)| m & mask == mask)
                .map(|(_, &c)| c)
                .sum(),
        )
    }

    /// Any-failure rate with its interval.
    pub fn estimate(&self, seed: u64) -> Result<RateEstimate> {
        RateEstimate::from_counts(self.failures, self.trials, seed)
    }
}

fn pair_index(k: usize, i: usize, j: usize) -> usize {
    // Rows 0..i hold (k−1) + (k−2) + … + (k−i) entries.
    i * (2 * k - i - 1) / 2 + (j - i - 1)
}

fn add_into(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn wilson_examples() {
        let (lo, _) = wilson_ci(0, 100, 0.95).unwrap();
        assert_eq!(lo, 0.0);
        let (_, hi) = wilson_ci(100, 100, 0.95).unwrap();
        assert_eq!(hi, 1.0);
        let (lo, hi) = wilson_ci(50, 100, 0.95).unwrap();
        assert!((0.5 - lo - (hi - 0.5)).abs() < 1e-12);
        assert!((hi - lo - 0.195).abs() < 0.005, "width {}", hi - lo);
        // Closed form with z = 1.96.
        let z: f64 = 1.96;
        let n = 100.0;
        let half = z * (0.25 / n + z * z / (4.0 * n * n)).sqrt() / (1.0 + z * z / n);
        assert!((hi - lo - 2.0 * half).abs() < 1e-4);
    }

    #[test]
    fn wilson_rejects_bad_counts() {
        assert!(wilson_ci(1, 0, 0.95).is_err());
        assert!(wilson_ci(5, 4, 0.95).is_err());
        assert!(wilson_ci(1, 4, 1.0).is_err());
    }

    #[test]
    fn pair_indices_are_dense() {
        let k = 7;
        let mut seen = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                seen.push(pair_index(k, i, j));
            }
        }
        assert_eq!(seen, (0..21).collect::<Vec<_>>());
    }

    #[test]
    fn record_and_query() {
        let mut s = TrialStats::new(4);
        s.record(&[]);
        s.record(&[1, 3]);
        s.record(&[0, 1, 3]);
        assert_eq!(s.trials(), 3);
        assert_eq!(s.failures(), 2);
        assert_eq!(s.per_qubit(), &[1, 2, 0, 2]);
        assert_eq!(s.weight_histogram(), &[1, 0, 1, 1, 0]);
        assert_eq!(s.pair_count(1, 3), Some(2));
        assert_eq!(s.pair_count(3, 0), Some(1));
        assert_eq!(s.superset_count(0b1010), Some(2));
        assert_eq!(s.superset_count(0b1011), Some(1));
        assert!(TrialStats::new(300).pattern_counts().is_none());
        assert!(!TrialStats::new(300).has_pairs());
    }

    proptest! {
        #[test]
        fn estimate_brackets_point(trials in 1u64..5000, frac in 0.0f64..=1.0) {
            let failures = (trials as f64 * frac).round() as u64;
            let e = RateEstimate::from_counts(failures, trials, 0).unwrap();
            prop_assert!(0.0 <= e.ci_low && e.ci_low <= e.p_hat);
            prop_assert!(e.p_hat <= e.ci_high && e.ci_high <= 1.0);
        }

        #[test]
        fn merge_is_order_independent(
            trials in prop::collection::vec(prop::collection::btree_set(0usize..6, 0..6), 0..40),
            split in 0usize..40,
        ) {
            let split = split.min(trials.len());
            let rows: Vec<Vec<usize>> = trials.into_iter().map(|s| s.into_iter().collect()).collect();
            let mut whole = TrialStats::new(6);
            rows.iter().for_each(|r| whole.record(r));
            let mut a = TrialStats::new(6);
            let mut b = TrialStats::new(6);
            rows[..split].iter().for_each(|r| a.record(r));
            rows[split..].iter().for_each(|r| b.record(r));
            let mut ab = a.clone();
            ab.merge(&b).unwrap();
            let mut ba = b;
            ba.merge(&a).unwrap();
            prop_assert_eq!(&ab, &whole);
            prop_assert_eq!(&ba, &whole);
        }
    }
}
