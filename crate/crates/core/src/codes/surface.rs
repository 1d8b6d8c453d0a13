// SPDX-License-Identifier: Apache-2.0

//! Unrotated planar surface code.
//!
//! The code lives on a `(2d−1) × (2d−1)` grid. Sites with `row + col` even
//! are data qubits (`d² + (d−1)²` of them). Sites with odd row and even
//! column are Z checks, which detect bit flips; sites with even row and odd
//! column are X checks. Z-check strings end on the top and bottom edges, so
//! a bit-flip chain from top to bottom (for example the left column) is the
//! logical X, and the top row is a logical Z representative.
//!
//! Z checks are addressed on their own `(d−1) × d` grid as `(a, b)` with
//! grid position `(2a+1, 2b)`; matching distances are Manhattan distances on
//! that grid.

use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Virtual node behind one of the two edges where Z-check strings may end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Boundary {
    Top,
    Bottom,
}

/// Whether even code distances are accepted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DistanceParity {
    #[default]
    OddOnly,
    AllowEven,
}

#[derive(Clone, Debug)]
pub struct SurfaceLattice {
    d: usize,
    side: usize,
    data_coords: Vec<(usize, usize)>,
    data_index: Vec<Option<usize>>,
    z_checks: Vec<Vec<usize>>,
    data_checks: Vec<Vec<usize>>,
    x_checks: Vec<Vec<usize>>,
    logical_z: BitVector,
    logical_x: BitVector,
    dist: Vec<u32>,
}

impl SurfaceLattice {
    /// Builds the distance-`d` lattice; `d` must be odd and at least 3.
    pub fn new(d: usize) -> Result<Self> {
        Self::with_parity(d, DistanceParity::OddOnly)
    }

    pub fn with_parity(d: usize, parity: DistanceParity) -> Result<Self> {
        if d < 3 {
            return Err(Error::param("d", format!("distance must be at least 3, got {d}")));
        }
        if d % 2 == 0 && parity == DistanceParity::OddOnly {
            return Err(Error::param(
                "d",
                format!("even distance {d} requires the allow-even option"),
            ));
        }
        let side = 2 * d - 1;
        let mut data_coords = Vec::new();
        let mut data_index = vec![None; side * side];
        for r in 0..side {
            for c in 0..side {
                if (r + c) % 2 == 0 {
                    data_index[r * side + c] = Some(data_coords.len());
                    data_coords.push((r, c));
                }
            }
        }
        let at = |r: isize, c: isize| -> Option<usize> {
            if r < 0 || c < 0 || r as usize >= side || c as usize >= side {
                None
            } else {
                data_index[r as usize * side + c as usize]
            }
        };
        let neighbours = |r: usize, c: usize| -> Vec<usize> {
            let (r, c) = (r as isize, c as isize);
            [(r - 1, c), (r, c - 1), (r, c + 1), (r + 1, c)]
                .into_iter()
                .filter_map(|(rr, cc)| at(rr, cc))
                .collect()
        };

        let mut z_checks = Vec::with_capacity(d * (d - 1));
        for a in 0..d - 1 {
            for b in 0..d {
                z_checks.push(neighbours(2 * a + 1, 2 * b));
            }
        }
        let mut x_checks = Vec::with_capacity(d * (d - 1));
        for a in 0..d {
            for b in 0..d - 1 {
                x_checks.push(neighbours(2 * a, 2 * b + 1));
            }
        }

        let n = data_coords.len();
        let mut data_checks = vec![Vec::new(); n];
        for (check, support) in z_checks.iter().enumerate() {
            for &q in support {
                data_checks[q].push(check);
            }
        }
        let logical_z =
            BitVector::from_ones(n, (0..d).map(|b| data_index[2 * b].expect("top row data")));
        let logical_x = BitVector::from_ones(
            n,
            (0..d).map(|a| data_index[2 * a * side].expect("left column data")),
        );

        let m = z_checks.len();
        let mut dist = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                let (ai, bi) = (i / d, i % d);
                let (aj, bj) = (j / d, j % d);
                dist[i * m + j] = (ai.abs_diff(aj) + bi.abs_diff(bj)) as u32;
            }
        }

        Ok(Self {
            d,
            side,
            data_coords,
            data_index,
            z_checks,
            data_checks,
            x_checks,
            logical_z,
            logical_x,
            dist,
        })
    }

    pub fn distance(&self) -> usize {
        self.d
    }

    /// `d² + (d−1)²`.
    pub fn num_data(&self) -> usize {
        self.data_coords.len()
    }

    pub fn num_checks(&self) -> usize {
        self.z_checks.len()
    }

    /// Data qubits touched by each Z check.
    pub fn z_checks(&self) -> &[Vec<usize>] {
        &self.z_checks
    }

    /// Z checks touching each data qubit (one on the top and bottom rows,
    /// two elsewhere).
    pub fn data_checks(&self) -> &[Vec<usize>] {
        &self.data_checks
    }

    /// Data qubits touched by each X check (the stabilizers a bit-flip
    /// residual may reduce to without logical action).
    pub fn x_checks(&self) -> &[Vec<usize>] {
        &self.x_checks
    }

    /// Support of the logical Z representative on the top row.
    pub fn logical_z(&self) -> &BitVector {
        &self.logical_z
    }

    /// Support of the logical X representative on the left column.
    pub fn logical_x(&self) -> &BitVector {
        &self.logical_x
    }

    pub fn data_coord(&self, q: usize) -> (usize, usize) {
        self.data_coords[q]
    }

    pub fn data_at(&self, row: usize, col: usize) -> Option<usize> {
        if row >= self.side || col >= self.side {
            return None;
        }
        self.data_index[row * self.side + col]
    }

    /// `(a, b)` grid position of a Z check.
    pub fn check_coord(&self, check: usize) -> (usize, usize) {
        (check / self.d, check % self.d)
    }

    pub fn check_index(&self, a: usize, b: usize) -> usize {
        a * self.d + b
    }

    /// Manhattan distance between two Z checks.
    pub fn check_distance(&self, i: usize, j: usize) -> u32 {
        self.dist[i * self.num_checks() + j]
    }

    /// Number of data qubits on the straight path from a check to a boundary.
    pub fn boundary_distance(&self, check: usize, boundary: Boundary) -> u32 {
        let (a, _) = self.check_coord(check);
        match boundary {
            Boundary::Top => (a + 1) as u32,
            Boundary::Bottom => (self.d - 1 - a) as u32,
        }
    }

    /// The closer boundary, preferring the top one on ties.
    pub fn nearest_boundary(&self, check: usize) -> (Boundary, u32) {
        let top = self.boundary_distance(check, Boundary::Top);
        let bottom = self.boundary_distance(check, Boundary::Bottom);
        if bottom < top {
            (Boundary::Bottom, bottom)
        } else {
            (Boundary::Top, top)
        }
    }

    /// Z-check syndrome of a bit-flip pattern.
    pub fn syndrome(&self, error: &BitVector) -> Result<BitVector> {
        if error.len() != self.num_data() {
            return Err(Error::dim("surface syndrome", self.num_data(), error.len()));
        }
        Ok(BitVector::from_bools(self.z_checks.iter().map(|support| {
            support.iter().filter(|&&q| error.get(q)).count() % 2 == 1
        })))
    }

    /// True iff a zero-syndrome bit-flip residual acts as logical X.
    pub fn is_logical_flip(&self, residual: &BitVector) -> bool {
        residual.dot_unchecked(&self.logical_z)
    }
}

/// Builds the lattice for odd `d ≥ 3`.
pub fn build_surface(d: usize) -> Result<SurfaceLattice> {
    SurfaceLattice::new(d)
}
