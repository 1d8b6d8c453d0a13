// SPDX-License-Identifier: Apache-2.0

//! Subcommand implementations. Each returns the text written to the output.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use surfham_core::concat::overhead;
use surfham_core::sim::{
    decay_check, estimate_surface_rate, pearson_pairs, per_qubit_rates, run_block_campaign,
    run_hamming_campaign, run_surface_hamming_campaign, set_correlations, threshold_crossing,
    Crossing, CurvePoint, Execution, RateEstimate, SurfaceRateTable,
};
use surfham_core::HammingLevelCode;

use crate::args::{
    BlockArgs, CodeKind, LogicalsArgs, OverheadArgs, SurfaceRateArgs, SweepArgs, ThresholdArgs,
};
use crate::grid::{parse_list, parse_p_grid};

/// One line of a `sweep` CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub code: String,
    pub d: Option<usize>,
    pub level: usize,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub p_logical: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl SweepRow {
    fn new(code: CodeKind, d: Option<usize>, level: usize, p: f64, e: &RateEstimate) -> Self {
        Self {
            code: code.name().to_owned(),
            d,
            level,
            p,
            trials: e.trials,
            failures: e.failures,
            p_logical: e.p_hat,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            seed: e.seed,
        }
    }

    pub fn estimate(&self) -> RateEstimate {
        RateEstimate {
            trials: self.trials,
            failures: self.failures,
            p_hat: self.p_logical,
            ci_low: self.ci_low,
            ci_high: self.ci_high,
            seed: self.seed,
        }
    }
}

/// One line of a `surface-rate` CSV (also the `--surface-table` input).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceRateRow {
    pub d: usize,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub p_logical: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn read_csv<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    r.deserialize()
        .enumerate()
        .map(|(i, row)| row.with_context(|| format!("{}: data row {}", path.display(), i + 1)))
        .collect()
}

pub fn sweep_rows(args: &SweepArgs, execution: Execution) -> Result<Vec<SweepRow>> {
    let levels: Vec<usize> = parse_list(&args.levels, "levels")?;
    ensure!(!levels.is_empty(), "--levels: no levels given");
    let grid = parse_p_grid(&args.p, args.points, "p")?;
    ensure!(args.trials > 0, "--trials must be positive");
    let mut rows = Vec::new();
    match args.code {
        CodeKind::Hamming => {
            ensure!(args.d.is_none(), "--d applies only to --code surface-hamming");
            if let Some(bad) = levels.iter().find(|l| !(1..=3).contains(*l)) {
                bail!("--levels: Hamming level {bad} not in 1..=3");
            }
            for &level in &levels {
                for &p in &grid {
                    let r = run_hamming_campaign(level, p, args.trials, args.seed, execution)?;
                    rows.push(SweepRow::new(args.code, None, level, p, &r.estimate));
                }
            }
        }
        CodeKind::SurfaceHamming => {
            let d = args.d.context("--d is required for --code surface-hamming")?;
            ensure!(d >= 3, "--d: distance must be at least 3");
            if let Some(bad) = levels.iter().find(|l| **l == 0) {
                bail!("--levels: surface-Hamming level {bad} must be at least 1");
            }
            let table = match &args.surface_table {
                Some(path) => Some(load_surface_table(path)?),
                None => None,
            };
            let surface_trials = args.surface_trials.unwrap_or(args.trials);
            let mut p_sur = Vec::with_capacity(grid.len());
            for &p in &grid {
                p_sur.push(match &table {
                    Some(t) => t.get(d, p).context("--surface-table")?,
                    None => estimate_surface_rate(d, p, surface_trials, args.seed, execution)?.p_hat,
                });
            }
            for &level in &levels {
                for (&p, &ps) in grid.iter().zip(&p_sur) {
                    let r = run_surface_hamming_campaign(d, level, ps, args.trials, args.seed, execution)?;
                    rows.push(SweepRow::new(args.code, Some(d), level, p, &r.estimate));
                }
            }
        }
    }
    Ok(rows)
}

pub fn load_surface_table(path: &Path) -> Result<SurfaceRateTable> {
    let mut table = SurfaceRateTable::new();
    for row in read_csv::<SurfaceRateRow>(path)? {
        table.insert(row.d, row.p, row.p_logical)?;
    }
    Ok(table)
}

pub fn surface_rate_rows(args: &SurfaceRateArgs, execution: Execution) -> Result<Vec<SurfaceRateRow>> {
    let ds: Vec<usize> = parse_list(&args.d, "d")?;
    let grid = parse_p_grid(&args.p, args.points, "p")?;
    let mut rows = Vec::new();
    for &d in &ds {
        for &p in &grid {
            let e = estimate_surface_rate(d, p, args.trials, args.seed, execution)
                .with_context(|| format!("--d {d}"))?;
            rows.push(SurfaceRateRow {
                d,
                p,
                trials: e.trials,
                failures: e.failures,
                p_logical: e.p_hat,
                ci_low: e.ci_low,
                ci_high: e.ci_high,
                seed: e.seed,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub code: String,
    pub d: Option<usize>,
    pub level_a: usize,
    pub level_b: usize,
    /// `found`, `none` or `ambiguous`.
    pub status: String,
    pub p_th: Option<f64>,
    pub low: Option<f64>,
    pub high: Option<f64>,
    pub rate: Option<f64>,
}

/// Crossings of successive levels for every (code, d) family in a sweep.
pub fn threshold_rows(rows: &[SweepRow]) -> Result<Vec<ThresholdRow>> {
    let mut families: BTreeMap<(String, Option<usize>), BTreeMap<usize, Vec<CurvePoint>>> = BTreeMap::new();
    for r in rows {
        families
            .entry((r.code.clone(), r.d))
            .or_default()
            .entry(r.level)
            .or_default()
            .push(CurvePoint {
                p: r.p,
                estimate: r.estimate(),
            });
    }
    let mut out = Vec::new();
    for ((code, d), curves) in families {
        let levels: Vec<&usize> = curves.keys().collect();
        for pair in levels.windows(2) {
            let (a, b) = (*pair[0], *pair[1]);
            let crossing = threshold_crossing(&curves[&a], &curves[&b])?;
            let mut row = ThresholdRow {
                code: code.clone(),
                d,
                level_a: a,
                level_b: b,
                status: String::new(),
                p_th: None,
                low: None,
                high: None,
                rate: None,
            };
            match crossing {
                Crossing::Found(t) => {
                    row.status = "found".into();
                    row.p_th = Some(t.p_th);
                    row.low = Some(t.low);
                    row.high = Some(t.high);
                    row.rate = Some(t.rate);
                }
                Crossing::None => row.status = "none".into(),
                Crossing::Ambiguous(_) => row.status = "ambiguous".into(),
            }
            out.push(row);
        }
    }
    Ok(out)
}

pub fn threshold(args: &ThresholdArgs) -> Result<String> {
    let rows: Vec<SweepRow> = read_csv(&args.input).context("--input")?;
    ensure!(!rows.is_empty(), "--input: no data rows");
    to_csv(&threshold_rows(&rows)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRow {
    /// `pair` or `set`.
    pub kind: String,
    /// Space-separated qubit indices (0-based).
    pub set: String,
    pub target: usize,
    pub rho: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
}

fn check_block(args: &BlockArgs) -> Result<()> {
    ensure!(args.level <= 2, "--level: block analyses support levels 0..=2, got {}", args.level);
    ensure!(args.trials >= 4, "--trials: need at least 4 trials");
    Ok(())
}

pub fn correlations(args: &BlockArgs, execution: Execution) -> Result<String> {
    check_block(args)?;
    let sizes: Vec<usize> = parse_list(&args.sets, "sets")?;
    let r = run_block_campaign(args.level, args.p, args.trials, args.seed, execution)?;
    let report = pearson_pairs(&r.stats)?;
    let mut rows: Vec<CorrelationRow> = report
        .pairs
        .iter()
        .map(|p| CorrelationRow {
            kind: "pair".into(),
            set: p.i.to_string(),
            target: p.j,
            rho: p.rho,
            ci_low: p.ci_low,
            ci_high: p.ci_high,
        })
        .collect();
    if !sizes.is_empty() {
        let k = HammingLevelCode::build(args.level)?.num_logicals();
        if let Some(bad) = sizes.iter().find(|s| **s == 0 || **s > k) {
            bail!("--sets: size {bad} not in 1..={k}");
        }
        for s in set_correlations(&r.stats, &sizes)? {
            rows.push(CorrelationRow {
                kind: "set".into(),
                set: s.set.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                target: s.target,
                rho: s.rho,
                ci_low: None,
                ci_high: None,
            });
        }
    }
    to_csv(&rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub i: usize,
    pub count: u64,
    pub p_i: f64,
    pub rate: f64,
    pub bound: f64,
    pub within: bool,
}

pub fn decay(args: &BlockArgs, execution: Execution) -> Result<String> {
    check_block(args)?;
    let r = run_block_campaign(args.level, args.p, args.trials, args.seed, execution)?;
    let report = decay_check(&r.stats)?;
    let hist = r.stats.weight_histogram();
    let rows: Vec<DecayRow> = report
        .p_i
        .iter()
        .map(|&(i, p_i)| {
            let bound = report.rate.powi(i as i32);
            DecayRow {
                i,
                count: hist[i],
                p_i,
                rate: report.rate,
                bound,
                within: p_i <= bound * (1.0 + 1e-12),
            }
        })
        .collect();
    to_csv(&rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerQubitRow {
    pub qubit: usize,
    pub trials: u64,
    pub failures: u64,
    pub p_logical: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

pub fn perqubit(args: &BlockArgs, execution: Execution) -> Result<String> {
    check_block(args)?;
    let r = run_block_campaign(args.level, args.p, args.trials, args.seed, execution)?;
    let rows: Vec<PerQubitRow> = per_qubit_rates(&r.stats, args.seed)?
        .iter()
        .enumerate()
        .map(|(qubit, e)| PerQubitRow {
            qubit,
            trials: e.trials,
            failures: e.failures,
            p_logical: e.p_hat,
            ci_low: e.ci_low,
            ci_high: e.ci_high,
            seed: e.seed,
        })
        .collect();
    to_csv(&rows)
}

pub fn overhead_csv(args: &OverheadArgs) -> Result<String> {
    let ds: Vec<usize> = parse_list(&args.d, "d")?;
    ensure!(args.levels <= 3, "--levels: at most 3, got {}", args.levels);
    let mut rows = Vec::new();
    for &d in &ds {
        for level in 0..=args.levels {
            rows.push(overhead(d, level).with_context(|| format!("--d {d}"))?);
        }
    }
    to_csv(&rows)
}

/// The logical matrix as rows of space-separated bits.
pub fn logicals(args: &LogicalsArgs) -> Result<String> {
    ensure!((3..=5).contains(&args.r), "--r: must be 3, 4 or 5, got {}", args.r);
    let code = HammingLevelCode::build(args.r - 3)?;
    let mut out = String::new();
    for row in code.logical_matrix().rows() {
        let bits: Vec<&str> = row.iter().map(|b| if b { "1" } else { "0" }).collect();
        out.push_str(&bits.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overhead_matches_table() {
        let csv = overhead_csv(&OverheadArgs {
            d: "3,4,5".into(),
            levels: 3,
        })
        .unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "d,level,overhead_exact,overhead_rounded");
        assert_eq!(lines.len(), 13);
        let rounded: Vec<u64> = lines[1..]
            .iter()
            .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
            .collect();
        assert_eq!(rounded, vec![13, 28, 41, 51, 25, 54, 79, 98, 41, 88, 130, 160]);
    }

    #[test]
    fn logicals_print_rows_of_bits() {
        let text = logicals(&LogicalsArgs { r: 4 }).unwrap();
        assert_eq!(text.lines().count(), 7);
        assert!(text.lines().all(|l| l.split(' ').count() == 15));
        assert!(logicals(&LogicalsArgs { r: 6 }).is_err());
    }

    #[test]
    fn sweep_header_and_errors() {
        let mut args = SweepArgs {
            code: CodeKind::Hamming,
            levels: "1".into(),
            d: None,
            p: "0.01,0.02".into(),
            points: 8,
            trials: 50,
            surface_trials: None,
            surface_table: None,
            seed: 3,
        };
        let csv = to_csv(&sweep_rows(&args, Execution::Sequential).unwrap()).unwrap();
        assert_eq!(
            csv.lines().next().unwrap(),
            "code,d,level,p,trials,failures,p_logical,ci_low,ci_high,seed"
        );
        assert!(csv.lines().nth(1).unwrap().starts_with("hamming,,1,0.01,50,"));
        args.levels = "4".into();
        assert!(sweep_rows(&args, Execution::Sequential).unwrap_err().to_string().contains("--levels"));
        args.code = CodeKind::SurfaceHamming;
        args.levels = "1".into();
        assert!(sweep_rows(&args, Execution::Sequential).unwrap_err().to_string().contains("--d"));
    }

    #[test]
    fn threshold_of_synthetic_sweep() {
        let mk = |level, p: f64, y: f64| SweepRow {
            code: "hamming".into(),
            d: None,
            level,
            p,
            trials: 100,
            failures: 1,
            p_logical: y,
            ci_low: y * 0.8,
            ci_high: y * 1.2,
            seed: 0,
        };
        let mut rows = Vec::new();
        for p in [0.5, 0.8, 1.25, 2.0] {
            rows.push(mk(1, p, p));
            rows.push(mk(2, p, p * p));
        }
        let t = threshold_rows(&rows).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].status, "found");
        assert!((t[0].p_th.unwrap() - 1.0).abs() < 1e-9);
    }
}
