// SPDX-License-Identifier: Apache-2.0

//! Minimum-weight perfect matching for the planar surface code.
//!
//! Each defect gets a private boundary twin; twins are joined to each other
//! at zero cost, so any defect may end on a boundary. Defect–defect edges
//! are weighted by Manhattan distance and defect–twin edges by the distance
//! to the nearer rough edge. Pairs farther apart than their combined
//! boundary distances are not offered as edges; going to the boundary is
//! never worse for them.

use mwmatching::{Edge, Matching, SENTINEL};

use crate::codes::{Boundary, SurfaceLattice};
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// Z checks with syndrome 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefectSet {
    checks: Vec<usize>,
}

impl DefectSet {
    pub fn new(mut checks: Vec<usize>) -> Self {
        checks.sort_unstable();
        checks.dedup();
        Self { checks }
    }

    pub fn from_syndrome(syndrome: &BitVector) -> Self {
        Self {
            checks: syndrome.iter_ones().collect(),
        }
    }

    pub fn checks(&self) -> &[usize] {
        &self.checks
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

/// Where a matched defect's path ends.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Partner {
    Defect(usize),
    Boundary(Boundary),
}

#[derive(Clone, Debug)]
pub struct MatchingOutcome {
    /// Matched pairs as (check, partner); each defect pair appears once.
    pub pairs: Vec<(usize, Partner)>,
    /// Sum of path lengths.
    pub weight: u32,
    pub correction: BitVector,
}

/// Matches the defects and returns the correction.
pub fn mwpm_decode_surface(defects: &DefectSet, lattice: &SurfaceLattice) -> Result<BitVector> {
    mwpm_match(defects, lattice).map(|m| m.correction)
}

pub fn mwpm_match(defects: &DefectSet, lattice: &SurfaceLattice) -> Result<MatchingOutcome> {
    let mut correction = BitVector::zeros(lattice.num_data());
    let m = defects.len();
    if m == 0 {
        return Ok(MatchingOutcome {
            pairs: Vec::new(),
            weight: 0,
            correction,
        });
    }
    if let Some(&bad) = defects.checks.iter().find(|&&c| c >= lattice.num_checks()) {
        return Err(Error::Index {
            context: "defect check",
            index: bad,
            max: lattice.num_checks() - 1,
        });
    }

    let checks = &defects.checks;
    let boundary: Vec<(Boundary, u32)> = checks.iter().map(|&c| lattice.nearest_boundary(c)).collect();
    let max_w = 2 * lattice.distance() as i32;
    // Matching maximizes weight among perfect matchings; every perfect
    // matching has m edges, so `offset − 2w` turns this into minimizing w.
    let offset = 2 * max_w + 2;
    let mut edges: Vec<Edge> = Vec::with_capacity(m * (m + 1));
    for i in 0..m {
        for j in i + 1..m {
            let w = lattice.check_distance(checks[i], checks[j]);
            if w < boundary[i].1 + boundary[j].1 {
                edges.push((i, j, offset - 2 * w as i32));
            }
        }
        edges.push((i, m + i, offset - 2 * boundary[i].1 as i32));
        for j in i + 1..m {
            edges.push((m + i, m + j, offset));
        }
    }
    let mates = Matching::new(edges).max_cardinality().solve();

    let mut pairs = Vec::with_capacity(m);
    let mut weight = 0;
    for i in 0..m {
        let mate = mates.get(i).copied().unwrap_or(SENTINEL);
        if mate == SENTINEL {
            return Err(Error::Internal(format!("defect {} left unmatched", checks[i])));
        }
        if mate == m + i {
            let (side, w) = boundary[i];
            weight += w;
            flip_boundary_path(lattice, checks[i], side, &mut correction);
            pairs.push((checks[i], Partner::Boundary(side)));
        } else if mate < m {
            if mate > i {
                weight += lattice.check_distance(checks[i], checks[mate]);
                flip_pair_path(lattice, checks[i], checks[mate], &mut correction);
                pairs.push((checks[i], Partner::Defect(checks[mate])));
            }
        } else {
            return Err(Error::Internal(format!(
                "defect {} matched to a foreign boundary twin",
                checks[i]
            )));
        }
    }
    Ok(MatchingOutcome {
        pairs,
        weight,
        correction,
    })
}

/// Vertical run first, along the column of `from`, then horizontal along
/// the row of `to`.
fn flip_pair_path(lattice: &SurfaceLattice, from: usize, to: usize, correction: &mut BitVector) {
    let (a1, b1) = lattice.check_coord(from);
    let (a2, b2) = lattice.check_coord(to);
    for a in a1.min(a2)..a1.max(a2) {
        // Data between check rows a and a+1 in column b1.
        flip(lattice, 2 * a + 2, 2 * b1, correction);
    }
    for b in b1.min(b2)..b1.max(b2) {
        flip(lattice, 2 * a2 + 1, 2 * b + 1, correction);
    }
}

fn flip_boundary_path(lattice: &SurfaceLattice, from: usize, side: Boundary, correction: &mut BitVector) {
    let (a, b) = lattice.check_coord(from);
    let d = lattice.distance();
    let rows: Box<dyn Iterator<Item = usize>> = match side {
        Boundary::Top => Box::new(0..=a),
        Boundary::Bottom => Box::new(a + 1..d),
    };
    for r in rows {
        flip(lattice, 2 * r, 2 * b, correction);
    }
}

fn flip(lattice: &SurfaceLattice, row: usize, col: usize, correction: &mut BitVector) {
    let q = lattice
        .data_at(row, col)
        .expect("matching paths stay on data sites");
    correction.flip(q);
}

/// Decodes one bit-flip pattern and reports whether the residual carries a
/// logical flip.
pub fn surface_logical_failure(error: &BitVector, lattice: &SurfaceLattice) -> Result<bool> {
    let syndrome = lattice.syndrome(error)?;
    let correction = mwpm_decode_surface(&DefectSet::from_syndrome(&syndrome), lattice)?;
    let residual = error ^ &correction;
    debug_assert!(lattice.syndrome(&residual).map(|s| s.is_zero()).unwrap_or(false));
    Ok(lattice.is_logical_flip(&residual))
}
