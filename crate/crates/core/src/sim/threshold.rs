// SPDX-License-Identifier: Apache-2.0

//! Threshold extraction from two logical-rate curves.
//!
//! Each curve is interpolated piecewise-linearly in `(log p, log rate)`.
//! The threshold is where the two interpolants meet. Its uncertainty comes
//! from repeating the search with one curve moved to its upper 95% bounds
//! and the other to its lower bounds, and vice versa.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::stats::RateEstimate;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub p: f64,
    pub estimate: RateEstimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub p_th: f64,
    pub low: f64,
    pub high: f64,
    /// Logical rate of the first curve at the crossing.
    pub rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Crossing {
    Found(ThresholdEstimate),
    /// The curves do not meet on the shared range.
    None,
    /// More than one sign change; all crossing points are listed.
    Ambiguous(Vec<f64>),
}

impl Crossing {
    pub fn found(&self) -> Option<&ThresholdEstimate> {
        match self {
            Crossing::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Crossing of curve `a` and curve `b`.
pub fn threshold_crossing(a: &[CurvePoint], b: &[CurvePoint]) -> Result<Crossing> {
    let pick = |c: &[CurvePoint], f: fn(&RateEstimate) -> f64| -> Vec<(f64, f64)> {
        c.iter().map(|pt| (pt.p, f(&pt.estimate))).collect()
    };
    let centre = crossings(&pick(a, |e| e.p_hat), &pick(b, |e| e.p_hat))?;
    let p_th = match centre.as_slice() {
        [] => return Ok(Crossing::None),
        [one] => *one,
        _ => return Ok(Crossing::Ambiguous(centre)),
    };
    let mut low = p_th;
    let mut high = p_th;
    let upper: fn(&RateEstimate) -> f64 = |e| e.ci_high;
    let lower: fn(&RateEstimate) -> f64 = |e| e.ci_low;
    for (fa, fb) in [(upper, lower), (lower, upper)] {
        let shifted = crossings(&pick(a, fa), &pick(b, fb))?;
        match shifted.as_slice() {
            [] => {
                // The band reaches the edge of the sampled range.
                let (lo, hi) = shared_range(a, b);
                low = low.min(lo);
                high = high.max(hi);
            }
            xs => {
                for &x in xs {
                    low = low.min(x);
                    high = high.max(x);
                }
            }
        }
    }
    let rate = interpolate(&pick(a, |e| e.p_hat), p_th).unwrap_or(f64::NAN);
    Ok(Crossing::Found(ThresholdEstimate {
        p_th,
        low,
        high,
        rate,
    }))
}

/// Crossing points of two `(x, y)` curves in log–log space.
pub fn crossings(a: &[(f64, f64)], b: &[(f64, f64)]) -> Result<Vec<f64>> {
    let a = log_points(a)?;
    let b = log_points(b)?;
    if a.len() < 2 || b.len() < 2 {
        return Ok(Vec::new());
    }
    let lo = a[0].0.max(b[0].0);
    let hi = a[a.len() - 1].0.min(b[b.len() - 1].0);
    if lo >= hi {
        return Ok(Vec::new());
    }
    let mut xs: Vec<f64> = a
        .iter()
        .chain(&b)
        .map(|&(x, _)| x)
        .filter(|&x| x >= lo && x <= hi)
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let diff = |x: f64| lerp(&a, x) - lerp(&b, x);
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &x in &xs {
        let y = diff(x);
        if y == 0.0 {
            out.push(x);
        } else if let Some((px, py)) = prev {
            if py != 0.0 && py.signum() != y.signum() {
                out.push(px + (x - px) * py / (py - y));
            }
        }
        prev = Some((x, y));
    }
    out.dedup_by(|p, q| (*p - *q).abs() < 1e-12);
    Ok(out.into_iter().map(f64::exp).collect())
}

fn log_points(c: &[(f64, f64)]) -> Result<Vec<(f64, f64)>> {
    let mut pts: Vec<(f64, f64)> = Vec::with_capacity(c.len());
    for &(x, y) in c {
        if !(x > 0.0) {
            return Err(Error::param("p", format!("curve abscissa {x} must be positive")));
        }
        // Zero rates have no logarithm; those points are left out.
        if y > 0.0 {
            pts.push((x.ln(), y.ln()));
        }
    }
    pts.sort_by(|p, q| p.0.total_cmp(&q.0));
    if pts.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::param("p", "curve has repeated abscissae"));
    }
    Ok(pts)
}

/// Linear interpolation on sorted log points; `x` must lie in range.
fn lerp(pts: &[(f64, f64)], x: f64) -> f64 {
    let i = pts.partition_point(|&(px, _)| px < x);
    if i == 0 {
        return pts[0].1;
    }
    if i == pts.len() {
        return pts[pts.len() - 1].1;
    }
    let (x0, y0) = pts[i - 1];
    let (x1, y1) = pts[i];
    y0 + (y1 - y0) * (x - x0) / (x1 - x0)
}

fn interpolate(c: &[(f64, f64)], p: f64) -> Option<f64> {
    let pts = log_points(c).ok()?;
    (pts.len() >= 2).then(|| lerp(&pts, p.ln()).exp())
}

fn shared_range(a: &[CurvePoint], b: &[CurvePoint]) -> (f64, f64) {
    let range = |c: &[CurvePoint]| {
        c.iter()
            .filter(|pt| pt.estimate.p_hat > 0.0)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), pt| (lo.min(pt.p), hi.max(pt.p)))
    };
    let (alo, ahi) = range(a);
    let (blo, bhi) = range(b);
    (alo.max(blo), ahi.min(bhi))
}
