// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::logical::{extract_logicals, GeneratorSet, LogicalMatrix};

/// Largest check-bit count accepted by [`hamming_check_matrix`].
pub const MAX_CHECK_BITS: usize = 12;

/// Block length `2^(l+3) − 1` of the level-`l` code.
pub fn block_len(level: usize) -> usize {
    (1usize << (level + 3)) - 1
}

/// Logical qubit count `2^(l+3) − 2(l+3) − 1` of the level-`l` code.
pub fn logical_count(level: usize) -> usize {
    let r = level + 3;
    (1usize << r) - 2 * r - 1
}

/// `r × (2^r − 1)` matrix whose column `j` (1-based) is the binary expansion
/// of `j`, least significant bit in row 0.
pub fn hamming_check_matrix(r: usize) -> Result<BitMatrix> {
    if !(3..=MAX_CHECK_BITS).contains(&r) {
        return Err(Error::param(
            "r",
            format!("check-bit count must be in 3..={MAX_CHECK_BITS}, got {r}"),
        ));
    }
    let n = (1usize << r) - 1;
    let rows = (0..r)
        .map(|bit| BitVector::from_bools((1..=n).map(|j| j >> bit & 1 == 1)))
        .collect();
    BitMatrix::from_rows(n, rows)
}

/// Syndrome of one block: bit `i` is set iff check `i` anticommutes with the
/// error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syndrome(BitVector);

impl Syndrome {
    pub fn from_bits(bits: BitVector) -> Self {
        Syndrome(bits)
    }

    pub fn bits(&self) -> &BitVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.len() == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_zero()
    }

    /// `Σ sᵢ·2^i`.
    pub fn value(&self) -> usize {
        self.0.iter_ones().map(|i| 1usize << i).sum()
    }
}

/// `H·e mod 2`.
pub fn syndrome(check: &BitMatrix, error: &BitVector) -> Result<Syndrome> {
    check.mul_vec(error).map(Syndrome)
}

/// The level-`l` quantum Hamming code `[[2^r − 1, 2^r − 2r − 1, 3]]`,
/// `r = l + 3`, with the same check matrix in both CSS sectors.
#[derive(Clone, Debug)]
pub struct HammingLevelCode {
    level: usize,
    check: BitMatrix,
    logicals: LogicalMatrix,
}

impl HammingLevelCode {
    pub fn build(level: usize) -> Result<Self> {
        let r = level + 3;
        let check = hamming_check_matrix(r)?;
        let generators = GeneratorSet::from_classical_code(&check.kernel_basis());
        let logicals = extract_logicals(&generators)?.into_self_paired(&check)?;
        Ok(Self {
            level,
            check,
            logicals,
        })
    }

    /// Same code with a caller-supplied logical basis, e.g. a published one.
    /// The basis must pass [`crate::logical::validate_logicals`].
    pub fn with_logicals(level: usize, logicals: BitMatrix) -> Result<Self> {
        let check = hamming_check_matrix(level + 3)?;
        if logicals.num_rows() != logical_count(level) {
            return Err(Error::dim(
                "logical rows",
                logical_count(level),
                logicals.num_rows(),
            ));
        }
        if !crate::logical::validate_logicals(&check, &logicals)? {
            return Err(Error::param("logicals", "not a valid logical basis"));
        }
        Ok(Self {
            level,
            check,
            logicals: LogicalMatrix::from_rows(logicals),
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// Check-bit count `r = l + 3`.
    pub fn num_stabilizers(&self) -> usize {
        self.check.num_rows()
    }

    pub fn block_len(&self) -> usize {
        self.check.num_cols()
    }

    pub fn num_logicals(&self) -> usize {
        self.logicals.rows().num_rows()
    }

    pub fn check_matrix(&self) -> &BitMatrix {
        &self.check
    }

    pub fn logicals(&self) -> &LogicalMatrix {
        &self.logicals
    }

    /// Rows of `L`; logical `i` flips iff row `i` has odd overlap with the
    /// residual.
    pub fn logical_matrix(&self) -> &BitMatrix {
        self.logicals.rows()
    }

    /// `[[n, k, 3]]`.
    pub fn parameters(&self) -> (usize, usize, usize) {
        (self.block_len(), self.num_logicals(), 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_r() {
        assert!(matches!(
            hamming_check_matrix(2),
            Err(Error::Parameter { name: "r", .. })
        ));
    }

    #[test]
    fn columns_count_in_binary() {
        let h = hamming_check_matrix(3).unwrap();
        assert_eq!((h.num_rows(), h.num_cols()), (3, 7));
        for j in 1..=7 {
            let col = h.column(j - 1);
            assert_eq!(col.iter_ones().map(|i| 1 << i).sum::<usize>(), j);
        }
        assert_eq!(h.column(4).to_string(), "101");

        let h4 = hamming_check_matrix(4).unwrap();
        assert_eq!((h4.num_rows(), h4.num_cols()), (4, 15));
        let cols: std::collections::HashSet<_> = (0..15).map(|c| h4.column(c)).collect();
        assert_eq!(cols.len(), 15);
        assert!(!cols.contains(&BitVector::zeros(4)));
    }

    #[test]
    fn single_flips_have_distinct_syndromes_r5() {
        let h = hamming_check_matrix(5).unwrap();
        let seen: std::collections::HashSet<_> = (0..31)
            .map(|q| syndrome(&h, &BitVector::unit(31, q)).unwrap())
            .collect();
        assert_eq!(seen.len(), 31);
    }

    #[test]
    fn single_flips_have_distinct_nonzero_syndromes_up_to_level_3() {
        for level in 0..=3 {
            let h = hamming_check_matrix(level + 3).unwrap();
            let n = h.num_cols();
            let mut seen = std::collections::HashSet::new();
            for q in 0..n {
                let s = syndrome(&h, &BitVector::unit(n, q)).unwrap();
                assert!(!s.is_trivial());
                assert_eq!(s.value(), q + 1);
                assert!(seen.insert(s));
            }
        }
    }

    #[test]
    fn syndrome_examples() {
        let h = hamming_check_matrix(3).unwrap();
        assert!(syndrome(&h, &BitVector::zeros(7)).unwrap().is_trivial());
        // 1-based qubit 5 is index 4.
        let s = syndrome(&h, &BitVector::unit(7, 4)).unwrap();
        assert_eq!(s.bits().to_string(), "101");
        let two = BitVector::from_ones(7, [2, 4]);
        assert_eq!(syndrome(&h, &two).unwrap().value(), 3 ^ 5);
        assert_eq!(syndrome(&h, &two).unwrap().value(), 6);
        assert!(syndrome(&h, &BitVector::zeros(8)).is_err());
    }

    #[test]
    fn level_code_parameters() {
        let expected = [(7, 1), (15, 7), (31, 21), (63, 51)];
        for (level, &(n, k)) in expected.iter().enumerate() {
            let code = HammingLevelCode::build(level).unwrap();
            assert_eq!(code.parameters(), (n, k, 3));
            assert_eq!(code.num_stabilizers(), level + 3);
            assert_eq!((block_len(level), logical_count(level)), (n, k));

            let h = code.check_matrix();
            let l = code.logical_matrix();
            assert!(h.mul_transpose(l).unwrap().rows().iter().all(BitVector::is_zero));
            assert_eq!(l.stack(h).unwrap().rank(), k + level + 3);
        }
    }
}
