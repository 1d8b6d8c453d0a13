// SPDX-License-Identifier: Apache-2.0

//! Dense linear algebra over GF(2).
//!
//! Vectors are packed little-endian into `u64` words; bit `i` of a vector
//! lives in word `i / 64` at position `i % 64`. Bits past `len` in the last
//! word are always zero, so word-wise equality and hashing are exact.

use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        v.clear_tail();
        v
    }

    /// Vector with a single set bit at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Builds a vector from the low `len` bits of `word`.
    pub fn from_word(word: u64, len: usize) -> Self {
        assert!(len <= WORD_BITS, "from_word supports at most 64 bits");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word;
            v.clear_tail();
        }
        v
    }

    /// Low 64 bits as a word. Panics if the vector is longer than 64.
    pub fn to_word(&self) -> u64 {
        assert!(self.len <= WORD_BITS, "to_word supports at most 64 bits");
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD_BITS] ^= 1u64 << (index % WORD_BITS);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Σ uᵢ·vᵢ mod 2.
    pub fn parity_dot(&self, other: &Self) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::dim("parity_dot", self.len, other.len));
        }
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn xor_with(&mut self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::dim("xor", self.len, other.len));
        }
        self.xor_unchecked(other);
        Ok(())
    }

    pub(crate) fn xor_unchecked(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Indices of set bits in increasing order.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    pub fn concat(parts: &[BitVector]) -> Self {
        Self::from_bools(parts.iter().flat_map(|p| p.iter()))
    }

    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len);
        Self::from_bools((start..start + len).map(|i| self.get(i)))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        assert_eq!(self.len, rhs.len, "xor of vectors with different lengths");
        self.xor_unchecked(rhs);
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    /// Parses `0`/`1` characters; whitespace, `&` and `,` are skipped so
    /// rows copied out of a typeset matrix parse directly.
    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == '&' || c == ',' => {}
                other => {
                    return Err(Error::param("bits", format!("unexpected character {other:?}")))
                }
            }
        }
        Ok(Self::from_bools(bits))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowReduction {
    pub reduced: BitMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            cols: n,
            rows: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// An empty matrix (zero rows) over `cols` columns.
    pub fn empty(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::dim("matrix row", cols, bad.len()));
        }
        Ok(Self { cols, rows })
    }

    /// Parses one row per non-empty line.
    pub fn parse_rows(text: &str) -> Result<Self> {
        let rows: Vec<BitVector> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, BitVector::len);
        Self::from_rows(cols, rows)
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.rows[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        self.rows[row].set(col, value);
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::dim("push_row", self.cols, row.len()));
        }
        self.rows.push(row);
        Ok(())
    }

    /// `self` on top of `other`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::dim("stack", self.cols, other.cols));
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }

    pub fn column(&self, col: usize) -> BitVector {
        BitVector::from_bools(self.rows.iter().map(|r| r.get(col)))
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix {
            cols: self.rows.len(),
            rows: (0..self.cols).map(|c| self.column(c)).collect(),
        }
    }

    /// M·v over GF(2); output has one entry per row.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::dim("matrix-vector product", self.cols, v.len()));
        }
        Ok(BitVector::from_bools(
            self.rows.iter().map(|r| r.dot_unchecked(v)),
        ))
    }

    /// A·Bᵀ; entry (i, j) is the parity of row i of A against row j of B.
    pub fn mul_transpose(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::dim("A·Bᵀ", self.cols, other.cols));
        }
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bools(other.rows.iter().map(|b| a.dot_unchecked(b))))
            .collect();
        Ok(BitMatrix {
            cols: other.rows.len(),
            rows,
        })
    }

    /// Reduced row-echelon form. Pivot columns are taken left to right; the
    /// pivot row for a column is the lowest-index candidate row.
    pub fn row_reduce(&self) -> RowReduction {
        let mut rows = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(next, found);
            let pivot = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(col) {
                    row.xor_unchecked(&pivot);
                }
            }
            pivot_cols.push(col);
            next += 1;
        }
        RowReduction {
            reduced: BitMatrix {
                cols: self.cols,
                rows,
            },
            rank: pivot_cols.len(),
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    /// Basis of {v : M·v = 0}, one row per free column.
    pub fn kernel_basis(&self) -> BitMatrix {
        let RowReduction {
            reduced,
            pivot_cols,
            ..
        } = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (i, &pc) in pivot_cols.iter().enumerate() {
                    if reduced.rows[i].get(free) {
                        v.set(pc, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    pub fn in_row_space(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.cols {
            return Err(Error::dim("in_row_space", self.cols, v.len()));
        }
        let RowReduction {
            reduced,
            pivot_cols,
            ..
        } = self.row_reduce();
        Ok(reduce_against(&reduced, &pivot_cols, v).is_zero())
    }
}

/// Clears every pivot position of `v` using the rows of an RREF matrix.
pub(crate) fn reduce_against(reduced: &BitMatrix, pivot_cols: &[usize], v: &BitVector) -> BitVector {
    let mut out = v.clone();
    for (i, &pc) in pivot_cols.iter().enumerate() {
        if out.get(pc) {
            out.xor_unchecked(&reduced.rows[i]);
        }
    }
    out
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h3() -> BitMatrix {
        BitMatrix::parse_rows(
            "1010101
             0110011
             0001111",
        )
        .unwrap()
    }

    #[test]
    fn identity_reduces_to_itself() {
        let rr = BitMatrix::identity(3).row_reduce();
        assert_eq!(rr.rank, 3);
        assert_eq!(rr.pivot_cols, vec![0, 1, 2]);
        assert_eq!(rr.reduced, BitMatrix::identity(3));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let rr = BitMatrix::zeros(2, 5).row_reduce();
        assert_eq!(rr.rank, 0);
        assert!(rr.pivot_cols.is_empty());
    }

    #[test]
    fn hamming_7_has_rank_3() {
        // Brute force: the 8 combinations of 3 rows are pairwise distinct
        // iff the rows are independent.
        let h = h3();
        let mut seen = std::collections::HashSet::new();
        for mask in 0u8..8 {
            let mut acc = BitVector::zeros(7);
            for r in 0..3 {
                if mask >> r & 1 == 1 {
                    acc ^= h.row(r);
                }
            }
            seen.insert(acc);
        }
        assert_eq!(seen.len(), 8);
        assert_eq!(h.rank(), 3);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(4).kernel_basis().num_rows(), 0);
        assert_eq!(BitMatrix::zeros(2, 3).kernel_basis().num_rows(), 3);
        let h = h3();
        let k = h.kernel_basis();
        assert_eq!(k.num_rows(), 4);
        for row in k.rows() {
            assert!(h.mul_vec(row).unwrap().is_zero());
        }
    }

    #[test]
    fn row_space_membership() {
        let id = BitMatrix::identity(3);
        assert!(id.in_row_space(&BitVector::zeros(3)).unwrap());
        assert!(id.in_row_space(&"110".parse().unwrap()).unwrap());
        let h = h3();
        let logical: BitVector = "0101010".parse().unwrap();
        assert!(!h.in_row_space(&logical).unwrap());
        assert!(h.in_row_space(&BitVector::zeros(7)).unwrap());
        assert!(matches!(
            h.in_row_space(&BitVector::zeros(6)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn parse_and_display() {
        let v: BitVector = "1 & 0 & 1".parse().unwrap();
        assert_eq!(v.to_string(), "101");
        assert!("10x".parse::<BitVector>().is_err());
        let long = BitVector::ones(130);
        assert_eq!(long.weight(), 130);
        assert_eq!(long.iter_ones().count(), 130);
    }

    #[test]
    fn dot_length_mismatch_is_error() {
        let a = BitVector::zeros(3);
        let b = BitVector::zeros(4);
        assert!(a.parity_dot(&b).is_err());
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r).prop_map(
                move |rows| {
                    BitMatrix::from_rows(c, rows.into_iter().map(BitVector::from_bools).collect())
                        .unwrap()
                },
            )
        })
    }

    /// Every vector reachable as a combination of rows, by enumeration.
    fn span(m: &BitMatrix) -> std::collections::HashSet<BitVector> {
        let mut out = std::collections::HashSet::new();
        for mask in 0u32..(1 << m.num_rows()) {
            let mut acc = BitVector::zeros(m.num_cols());
            for r in 0..m.num_rows() {
                if mask >> r & 1 == 1 {
                    acc ^= m.row(r);
                }
            }
            out.insert(acc);
        }
        out
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(8, 12)) {
            let rr = m.row_reduce();
            prop_assert!(rr.rank <= m.num_rows().min(m.num_cols()));
            prop_assert_eq!(rr.rank + m.kernel_basis().num_rows(), m.num_cols());
        }

        #[test]
        fn row_reduce_is_idempotent(m in arb_matrix(8, 12)) {
            let once = m.row_reduce().reduced;
            prop_assert_eq!(once.row_reduce().reduced, once);
        }

        #[test]
        fn kernel_rows_are_orthogonal_to_all_rows(m in arb_matrix(8, 12)) {
            let k = m.kernel_basis();
            for kr in k.rows() {
                for r in m.rows() {
                    prop_assert!(!r.parity_dot(kr).unwrap());
                }
            }
            prop_assert_eq!(k.rank(), k.num_rows());
        }

        #[test]
        fn row_space_matches_enumeration(m in arb_matrix(6, 10), probe in proptest::collection::vec(any::<bool>(), 10)) {
            let all = span(&m);
            let v = BitVector::from_bools(probe.into_iter().take(m.num_cols()));
            prop_assert_eq!(m.in_row_space(&v).unwrap(), all.contains(&v));
            for s in all.iter().take(8) {
                prop_assert!(m.in_row_space(s).unwrap());
            }
        }

        #[test]
        fn parity_dot_is_symmetric_and_bilinear(
            a in proptest::collection::vec(any::<bool>(), 70),
            b in proptest::collection::vec(any::<bool>(), 70),
            c in proptest::collection::vec(any::<bool>(), 70),
        ) {
            let (a, b, c) = (BitVector::from_bools(a), BitVector::from_bools(b), BitVector::from_bools(c));
            prop_assert_eq!(a.parity_dot(&b).unwrap(), b.parity_dot(&a).unwrap());
            let bc = &b ^ &c;
            prop_assert_eq!(
                a.parity_dot(&bc).unwrap(),
                a.parity_dot(&b).unwrap() ^ a.parity_dot(&c).unwrap()
            );
        }
    }
}
