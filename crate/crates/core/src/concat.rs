// SPDX-License-Identifier: Apache-2.0

//! Register/block wiring of the concatenated code and qubit accounting.
//!
//! Level `l` takes `N_l` registers, each holding every logical qubit of one
//! copy of the level-`(l−1)` code, and forms one level-`l` Hamming block per
//! logical position: block `b` collects logical `b` of every register. The
//! bottom registers are single base blocks (a Steane block or a surface-code
//! patch), each holding one logical qubit.

use serde::{Deserialize, Serialize};

use crate::codes::{block_len, logical_count, DistanceParity, HammingLevelCode, SurfaceLattice};
use crate::error::{Error, Result};

/// Code used for the bottom registers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Base {
    /// `[[7,1,3]]`, decoded as the level-0 Hamming code.
    Steane,
    /// Planar surface code of distance `d`, decoded separately.
    Surface { d: usize },
}

impl Base {
    /// Physical qubits per base register.
    pub fn overhead(&self) -> usize {
        match *self {
            Base::Steane => 7,
            Base::Surface { d } => surface_qubits(d),
        }
    }
}

/// `d² + (d−1)²`.
pub fn surface_qubits(d: usize) -> usize {
    d * d + (d - 1) * (d - 1)
}

#[derive(Clone, Debug)]
pub struct ConcatenationSchema {
    top_level: usize,
    base: Base,
    levels: Vec<HammingLevelCode>,
}

impl ConcatenationSchema {
    /// Schema concatenated up to `top_level`. With a Steane base the Hamming
    /// levels are `0..=top_level`; with a surface base they are
    /// `1..=top_level` sitting on surface patches.
    pub fn build(top_level: usize, base: Base) -> Result<Self> {
        let first = match base {
            Base::Steane => 0,
            Base::Surface { d } => {
                SurfaceLattice::with_parity(d, DistanceParity::AllowEven)?;
                1
            }
        };
        let levels = (first..=top_level)
            .map(HammingLevelCode::build)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            top_level,
            base,
            levels,
        })
    }

    /// Same wiring with prebuilt level codes (for example with a published
    /// logical basis). `levels` must cover exactly the decoded levels.
    pub fn with_levels(top_level: usize, base: Base, levels: Vec<HammingLevelCode>) -> Result<Self> {
        let first = if base == Base::Steane { 0 } else { 1 };
        let expected: Vec<usize> = (first..=top_level).collect();
        let got: Vec<usize> = levels.iter().map(HammingLevelCode::level).collect();
        if expected != got {
            return Err(Error::param(
                "levels",
                format!("expected Hamming levels {expected:?}, got {got:?}"),
            ));
        }
        Ok(Self {
            top_level,
            base,
            levels,
        })
    }

    pub fn top_level(&self) -> usize {
        self.top_level
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Hamming codes decoded bottom-up, lowest level first.
    pub fn levels(&self) -> &[HammingLevelCode] {
        &self.levels
    }

    /// `Π K_l` over all levels (`K_0 = 1`).
    pub fn total_logical(&self) -> usize {
        (0..=self.top_level).map(logical_count).product()
    }

    /// Number of base registers: `Π N_l` over `l = 1..=top_level`.
    pub fn base_registers(&self) -> usize {
        (1..=self.top_level).map(block_len).product()
    }

    pub fn total_physical(&self) -> usize {
        self.base.overhead() * self.base_registers()
    }

    /// Length of the error frame fed to the Hamming decoder: physical
    /// qubits for a Steane base, one bit per surface patch otherwise.
    pub fn input_len(&self) -> usize {
        match self.base {
            Base::Steane => self.total_physical(),
            Base::Surface { .. } => self.base_registers(),
        }
    }

    /// Logicals held by one register entering `level`, `Π_{j<level} K_j`.
    pub fn logicals_per_register(level: usize) -> usize {
        (0..level).map(logical_count).product()
    }

    /// Exact overhead `total_physical / total_logical`.
    pub fn overhead_exact(&self) -> f64 {
        self.total_physical() as f64 / self.total_logical() as f64
    }
}

/// One row of the overhead table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverheadRow {
    pub d: usize,
    pub level: usize,
    pub overhead_exact: f64,
    pub overhead_rounded: u64,
}

/// Physical qubits per logical qubit for a surface base of distance `d`
/// concatenated up to `level` (`0..=3`).
pub fn overhead(d: usize, level: usize) -> Result<OverheadRow> {
    SurfaceLattice::with_parity(d, DistanceParity::AllowEven)?;
    if level > 3 {
        return Err(Error::param("level", format!("must be in 0..=3, got {level}")));
    }
    let exact = (1..=level).fold(surface_qubits(d) as f64, |acc, l| {
        acc * block_len(l) as f64 / logical_count(l) as f64
    });
    Ok(OverheadRow {
        d,
        level,
        overhead_exact: exact,
        overhead_rounded: exact.round() as u64,
    })
}

/// `1 − (1 − p)^k`: probability that at least one of `k` independent
/// blocks fails.
pub fn memory_failure_from_single(p_single: f64, k: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&p_single) {
        return Err(Error::param("p_single", format!("{p_single} not in [0, 1]")));
    }
    if k == 0 {
        return Err(Error::param("k", "must be at least 1"));
    }
    // ln_1p keeps precision for tiny p.
    Ok(-((k as f64) * (-p_single).ln_1p()).exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE: [(usize, [u64; 4]); 3] = [
        (3, [13, 28, 41, 51]),
        (4, [25, 54, 79, 98]),
        (5, [41, 88, 130, 160]),
    ];

    #[test]
    fn overhead_table_matches() {
        for (d, row) in TABLE {
            for (level, &expected) in row.iter().enumerate() {
                assert_eq!(overhead(d, level).unwrap().overhead_rounded, expected, "d={d} level={level}");
            }
        }
        assert!((overhead(3, 1).unwrap().overhead_exact - 13.0 * 15.0 / 7.0).abs() < 1e-12);
        let expected = 41.0 * (15.0 / 7.0) * (31.0 / 21.0) * (63.0 / 51.0);
        assert!((overhead(5, 3).unwrap().overhead_exact - expected).abs() < 1e-9);
        assert!((overhead(4, 2).unwrap().overhead_exact - 79.08).abs() < 0.01);
        assert!(overhead(3, 4).is_err());
        assert!(overhead(2, 0).is_err());
    }

    #[test]
    fn schema_counts() {
        let s = ConcatenationSchema::build(2, Base::Steane).unwrap();
        assert_eq!(s.total_physical(), 7 * 15 * 31);
        assert_eq!(s.total_physical(), 3255);
        assert_eq!(s.total_logical(), 147);
        assert_eq!(s.levels().len(), 3);

        let s = ConcatenationSchema::build(1, Base::Surface { d: 3 }).unwrap();
        assert_eq!(s.total_physical(), 195);
        assert_eq!(s.total_logical(), 7);
        assert_eq!(s.input_len(), 15);

        let s = ConcatenationSchema::build(0, Base::Steane).unwrap();
        assert_eq!((s.total_physical(), s.total_logical()), (7, 1));

        let logicals: Vec<usize> = (1..=3)
            .map(|l| ConcatenationSchema::build(l, Base::Steane).unwrap().total_logical())
            .collect();
        assert_eq!(logicals, vec![7, 147, 7497]);

        assert!(ConcatenationSchema::build(1, Base::Surface { d: 2 }).is_err());
        // d = 3 concatenated to level 2 holds 13·15·31 physical qubits.
        let s = ConcatenationSchema::build(2, Base::Surface { d: 3 }).unwrap();
        assert_eq!(s.total_physical(), 6045);
    }

    #[test]
    fn overhead_times_logicals_is_physical() {
        for d in [3, 4, 5, 7] {
            for level in 0..=3 {
                let s = ConcatenationSchema::build(level, Base::Surface { d }).unwrap();
                let row = overhead(d, level).unwrap();
                let lhs = row.overhead_exact * s.total_logical() as f64;
                assert!((lhs - s.total_physical() as f64).abs() < 1e-6 * lhs);
                assert!((s.overhead_exact() - row.overhead_exact).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn memory_failure() {
        assert_eq!(memory_failure_from_single(0.0, 9).unwrap(), 0.0);
        assert!((memory_failure_from_single(0.5, 1).unwrap() - 0.5).abs() < 1e-15);
        let v = memory_failure_from_single(0.01, 7).unwrap();
        assert!((v - (1.0 - 0.99f64.powi(7))).abs() < 1e-15);
        assert!((v - 0.06793).abs() < 1e-5);
        assert!(memory_failure_from_single(1.5, 7).is_err());
        assert!(memory_failure_from_single(0.1, 0).is_err());
    }
}
