// SPDX-License-Identifier: Apache-2.0

//! Brute-force oracles shared by the integration and acceptance tests.
//! They avoid the library's decoders and use only lattice geometry,
//! binary positions and row-space membership.

#![allow(dead_code)]

use surfham_core::codes::SurfaceLattice;
use surfham_core::gf2::{BitMatrix, BitVector};
use surfham_core::hamming_check_matrix;

pub const L3: &str = include_str!("../data/l3.txt");
pub const L4: &str = include_str!("../data/l4.txt");
pub const L5: &str = include_str!("../data/l5.txt");

/// Z-check incidence rebuilt from site coordinates.
pub fn z_incidence(lattice: &SurfaceLattice) -> Vec<Vec<usize>> {
    let d = lattice.distance();
    let mut checks = vec![Vec::new(); d * (d - 1)];
    for q in 0..lattice.num_data() {
        let (r, c) = lattice.data_coord(q);
        for (cr, cc) in [(r as isize - 1, c as isize), (r as isize + 1, c as isize)] {
            if cr >= 0 && (cr as usize) < 2 * d - 1 && cr % 2 == 1 && cc % 2 == 0 {
                checks[(cr as usize / 2) * d + cc as usize / 2].push(q);
            }
        }
        // Horizontal neighbours of a data site on an odd row are Z checks.
        if r % 2 == 1 {
            for cc in [c as isize - 1, c as isize + 1] {
                if cc >= 0 && (cc as usize) < 2 * d - 1 {
                    checks[(r / 2) * d + cc as usize / 2].push(q);
                }
            }
        }
    }
    checks
}

pub fn syndrome_word(incidence: &[Vec<usize>], error: u64) -> u64 {
    incidence.iter().enumerate().fold(0, |acc, (i, qs)| {
        let parity = qs.iter().filter(|&&q| error >> q & 1 == 1).count() & 1;
        acc | (parity as u64) << i
    })
}

/// Parity of a pattern on the top row (logical class).
pub fn top_row_class(lattice: &SurfaceLattice, error: u64) -> bool {
    (0..lattice.num_data())
        .filter(|&q| lattice.data_coord(q).0 == 0 && error >> q & 1 == 1)
        .count()
        % 2
        == 1
}

/// Per syndrome: minimum correction weight and the logical classes reached
/// at that weight (bit 0: trivial, bit 1: flipped).
pub struct MinWeightTable {
    pub weight: Vec<u32>,
    pub classes: Vec<u8>,
}

pub fn min_weight_table(lattice: &SurfaceLattice) -> MinWeightTable {
    let n = lattice.num_data();
    assert!(n <= 20, "exhaustive table only for small lattices");
    let inc = z_incidence(lattice);
    let m = inc.len();
    let mut weight = vec![u32::MAX; 1 << m];
    let mut classes = vec![0u8; 1 << m];
    for e in 0u64..1 << n {
        let s = syndrome_word(&inc, e) as usize;
        let w = e.count_ones();
        let class = 1u8 << top_row_class(lattice, e) as u8;
        if w < weight[s] {
            weight[s] = w;
            classes[s] = class;
        } else if w == weight[s] {
            classes[s] |= class;
        }
    }
    MinWeightTable { weight, classes }
}

/// Minimum total matching weight over all pairings of `defects`, each
/// defect either paired or sent to its nearer rough edge, by subset DP.
pub fn subset_matching_weight(lattice: &SurfaceLattice, defects: &[usize]) -> u32 {
    let d = lattice.distance() as i64;
    let coord = |c: usize| ((c / d as usize) as i64, (c % d as usize) as i64);
    let m = defects.len();
    let to_edge: Vec<u32> = defects
        .iter()
        .map(|&c| {
            let (a, _) = coord(c);
            (a + 1).min(d - 1 - a) as u32
        })
        .collect();
    let mut best = vec![u32::MAX; 1 << m];
    best[0] = 0;
    for mask in 1usize..1 << m {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut v = best[rest].saturating_add(to_edge[i]);
        let (ai, bi) = coord(defects[i]);
        let mut others = rest;
        while others != 0 {
            let j = others.trailing_zeros() as usize;
            others &= others - 1;
            let (aj, bj) = coord(defects[j]);
            let w = ((ai - aj).abs() + (bi - bj).abs()) as u32;
            v = v.min(best[rest & !(1 << j)].saturating_add(w));
        }
        best[mask] = v;
    }
    best[(1 << m) - 1]
}

/// Residual of single-error decoding of a Hamming block given as a word
/// (bit `j` = qubit `j+1`), by reading the syndrome as a binary position.
pub fn hamming_residual(word: u64) -> u64 {
    let mut s = 0u64;
    for j in 0..64 {
        if word >> j & 1 == 1 {
            s ^= j + 1;
        }
    }
    if s == 0 {
        word
    } else {
        word ^ 1 << (s - 1)
    }
}

/// Whether a zero-syndrome residual is a nontrivial logical of the `r`-bit
/// Hamming code (outside the stabilizer row space).
pub fn is_logical(check: &BitMatrix, residual: u64) -> bool {
    let v = BitVector::from_word(residual, check.num_cols());
    !check.in_row_space(&v).unwrap()
}

fn binomial_weight(p: f64, n: usize, w: u32) -> f64 {
    p.powi(w as i32) * (1.0 - p).powi((n as u32 - w) as i32)
}

/// Exact probability that one level-`r` Hamming block with independent
/// input flips of probability `p` ends in a nontrivial logical state.
/// With `max_weight` set, only inputs of at most that weight are summed.
pub fn block_failure(r: usize, p: f64, max_weight: Option<u32>) -> f64 {
    let h = hamming_check_matrix(r).unwrap();
    let n = h.num_cols();
    (0u64..1 << n)
        .filter(|e| max_weight.is_none_or(|m| e.count_ones() <= m))
        .filter(|&e| is_logical(&h, hamming_residual(e)))
        .map(|e| binomial_weight(p, n, e.count_ones()))
        .sum()
}

/// Exact any-failure probability of the level-1 concatenated code with a
/// Steane base: every Steane block flips independently with the exact
/// level-0 probability, and those flips feed one `[[15,7,3]]` block.
pub fn level1_failure(p: f64) -> f64 {
    block_failure(4, block_failure(3, p, None), None)
}

/// Same sum restricted to physical patterns of weight at most
/// `max_weight` (a lower bound on [`level1_failure`]).
pub fn level1_failure_truncated(p: f64, max_weight: u32) -> f64 {
    let h3 = hamming_check_matrix(3).unwrap();
    let h4 = hamming_check_matrix(4).unwrap();
    // Steane blocks holding w flips: probability of w flips and of a
    // logical flip given those flips.
    let mut by_weight = vec![(0.0f64, 0.0f64); 8];
    for e in 0u64..128 {
        let w = e.count_ones() as usize;
        let pr = binomial_weight(p, 7, w as u32);
        by_weight[w].0 += pr;
        if is_logical(&h3, hamming_residual(e)) {
            by_weight[w].1 += pr;
        }
    }
    // Distribute at most `max_weight` flips over 15 blocks: dp over blocks of
    // (total weight, level-1 input word) probabilities.
    let max_weight = max_weight as usize;
    let mut dp = vec![std::collections::HashMap::<u64, f64>::new(); max_weight + 1];
    dp[0].insert(0, 1.0);
    for block in 0..15 {
        let mut next = vec![std::collections::HashMap::<u64, f64>::new(); max_weight + 1];
        for (w, states) in dp.iter().enumerate() {
            for (&word, &pr) in states {
                for (bw, &(p_w, p_flip)) in by_weight.iter().enumerate() {
                    if w + bw > max_weight {
                        break;
                    }
                    let p_keep = p_w - p_flip;
                    if p_keep > 0.0 {
                        *next[w + bw].entry(word).or_default() += pr * p_keep;
                    }
                    if p_flip > 0.0 {
                        *next[w + bw].entry(word | 1 << block).or_default() += pr * p_flip;
                    }
                }
            }
        }
        dp = next;
    }
    dp.iter()
        .flat_map(|m| m.iter())
        .filter(|(&word, _)| is_logical(&h4, hamming_residual(word)))
        .map(|(_, &pr)| pr)
        .sum()
}
