// SPDX-License-Identifier: Apache-2.0

//! Logical-operator extraction for CSS codes.
//!
//! Generators are processed one at a time: a generator that commutes with
//! every other one is set aside on its own; otherwise it is set aside
//! together with its first anticommuting partner after every remaining
//! generator has been multiplied into commuting with both. The pairs that
//! survive are the logical operators, the singletons are stabilizers.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// A Pauli operator up to phase, as its X and Z supports.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pauli {
    pub x: BitVector,
    pub z: BitVector,
}

impl Pauli {
    pub fn x_type(support: BitVector) -> Self {
        let n = support.len();
        Self {
            x: support,
            z: BitVector::zeros(n),
        }
    }

    pub fn z_type(support: BitVector) -> Self {
        let n = support.len();
        Self {
            x: BitVector::zeros(n),
            z: support,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Symplectic product `x₁·z₂ ⊕ z₁·x₂`.
    pub fn anticommutes(&self, other: &Pauli) -> bool {
        self.x.dot_unchecked(&other.z) ^ self.z.dot_unchecked(&other.x)
    }

    /// Product up to phase.
    pub fn mul_assign(&mut self, other: &Pauli) {
        self.x.xor_unchecked(&other.x);
        self.z.xor_unchecked(&other.z);
    }

    /// Concatenated `(x | z)` row used for rank computations.
    pub fn symplectic_row(&self) -> BitVector {
        BitVector::concat(&[self.x.clone(), self.z.clone()])
    }
}

/// Ordered generators awaiting symplectic processing.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    generators: Vec<Pauli>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Pauli>) -> Result<Self> {
        if let Some(first) = generators.first() {
            let n = first.num_qubits();
            for g in &generators {
                if g.x.len() != n || g.z.len() != n {
                    return Err(Error::Algorithm(format!(
                        "generator acts on {} / {} qubits, expected {n}",
                        g.x.len(),
                        g.z.len()
                    )));
                }
            }
        }
        Ok(Self { generators })
    }

    /// Lifts each codeword generator `g` of a classical code to the pair
    /// `X(g), Z(g)`, interleaved in row order.
    pub fn from_classical_code(generator_matrix: &BitMatrix) -> Self {
        let generators = generator_matrix
            .rows()
            .iter()
            .flat_map(|g| [Pauli::x_type(g.clone()), Pauli::z_type(g.clone())])
            .collect();
        Self { generators }
    }

    pub fn generators(&self) -> &[Pauli] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// The set of processed operators: anticommuting pairs and commuting
/// singletons, in the order they were set aside.
#[derive(Clone, Debug, Default)]
pub struct ProcessedOperators {
    pub pairs: Vec<(Pauli, Pauli)>,
    pub singletons: Vec<Pauli>,
}

impl ProcessedOperators {
    pub fn all(&self) -> impl Iterator<Item = &Pauli> {
        self.pairs
            .iter()
            .flat_map(|(a, b)| [a, b])
            .chain(self.singletons.iter())
    }
}

pub fn symplectic_reduce(set: &GeneratorSet) -> ProcessedOperators {
    let mut remaining: std::collections::VecDeque<Pauli> = set.generators.iter().cloned().collect();
    let mut out = ProcessedOperators::default();
    while let Some(first) = remaining.pop_front() {
        let Some(j) = remaining.iter().position(|g| g.anticommutes(&first)) else {
            out.singletons.push(first);
            continue;
        };
        let partner = remaining.remove(j).expect("index from position");
        for g in remaining.iter_mut() {
            match (g.anticommutes(&first), g.anticommutes(&partner)) {
                (false, false) => {}
                (false, true) => g.mul_assign(&first),
                (true, false) => g.mul_assign(&partner),
                (true, true) => {
                    g.mul_assign(&first);
                    g.mul_assign(&partner);
                }
            }
        }
        out.pairs.push((first, partner));
    }
    out
}

/// Logical-operator matrix of a CSS code.
///
/// Row `i` is the X-type support of logical `i`; `duals` row `i` is the
/// Z-type support of its partner, so `rows · dualsᵀ = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalMatrix {
    rows: BitMatrix,
    duals: BitMatrix,
}

impl LogicalMatrix {
    /// Uses the same supports for both sectors.
    pub fn from_rows(rows: BitMatrix) -> Self {
        Self {
            duals: rows.clone(),
            rows,
        }
    }

    pub fn rows(&self) -> &BitMatrix {
        &self.rows
    }

    pub fn duals(&self) -> &BitMatrix {
        &self.duals
    }

    pub fn num_qubits(&self) -> usize {
        self.rows.num_cols()
    }

    pub fn num_logicals(&self) -> usize {
        self.rows.num_rows()
    }

    /// True when X and Z supports coincide and `L·Lᵀ = I`.
    pub fn is_self_paired(&self) -> bool {
        self.rows == self.duals
            && self
                .rows
                .mul_transpose(&self.rows)
                .is_ok_and(|g| g == BitMatrix::identity(self.rows.num_rows()))
    }

    /// Changes basis within the logical space so that each logical's X and Z
    /// operators share one support and distinct logicals have even overlap.
    /// The code's checks are needed only to confirm the result stays valid.
    pub fn into_self_paired(self, check: &BitMatrix) -> Result<Self> {
        let rows = orthonormalize(self.rows.into_rows())?;
        let rows = BitMatrix::from_rows(check.num_cols(), rows)?;
        if !validate_logicals(check, &rows)? {
            return Err(Error::Algorithm("pairing left the logical space".into()));
        }
        Ok(Self::from_rows(rows))
    }
}

/// Gram–Schmidt for the dot product over GF(2): returns vectors spanning
/// the same space with `vᵢ·vⱼ = δᵢⱼ`. Fails when the form is alternating
/// or degenerate on the span.
fn orthonormalize(mut pending: Vec<BitVector>) -> Result<Vec<BitVector>> {
    fn project(v: &mut BitVector, onto: &[&BitVector]) {
        let hits: Vec<bool> = onto.iter().map(|b| v.dot_unchecked(b)).collect();
        for (b, hit) in onto.iter().zip(hits) {
            if hit {
                v.xor_unchecked(b);
            }
        }
    }

    let mut done: Vec<BitVector> = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        if let Some(pos) = pending.iter().position(|v| v.dot_unchecked(v)) {
            let v = pending.remove(pos);
            for w in pending.iter_mut() {
                project(w, &[&v]);
            }
            done.push(v);
            continue;
        }
        // Every remaining vector is self-orthogonal: take a hyperbolic pair
        // (u, w) and fold in an already-unit vector e. Then e+u+w, e+u, e+w
        // are unit and mutually orthogonal.
        let u = pending.remove(0);
        let pos = pending
            .iter()
            .position(|w| u.dot_unchecked(w))
            .ok_or_else(|| Error::Algorithm("dot product is degenerate on the logical span".into()))?;
        let w = pending.remove(pos);
        let e = done
            .pop()
            .ok_or_else(|| Error::Algorithm("dot product is alternating on the logical span".into()))?;
        let eu = &e ^ &u;
        let ew = &e ^ &w;
        let euw = &eu ^ &w;
        for x in pending.iter_mut() {
            project(x, &[&euw, &eu, &ew]);
        }
        done.extend([euw, eu, ew]);
    }
    Ok(done)
}

/// Runs the symplectic procedure and keeps the X-type member of each
/// anticommuting pair.
pub fn extract_logicals(set: &GeneratorSet) -> Result<LogicalMatrix> {
    let n = set.generators.first().map_or(0, Pauli::num_qubits);
    let processed = symplectic_reduce(set);
    let mut rows = Vec::with_capacity(processed.pairs.len());
    let mut duals = Vec::with_capacity(processed.pairs.len());
    for (a, b) in &processed.pairs {
        let (xpart, zpart) = match (a.z.is_zero(), b.x.is_zero(), a.x.is_zero(), b.z.is_zero()) {
            (true, true, _, _) => (a.x.clone(), b.z.clone()),
            (_, _, true, true) => (b.x.clone(), a.z.clone()),
            _ => {
                return Err(Error::Algorithm(
                    "anticommuting pair is not split into X and Z type".into(),
                ))
            }
        };
        rows.push(xpart);
        duals.push(zpart);
    }
    Ok(LogicalMatrix {
        rows: BitMatrix::from_rows(n, rows)?,
        duals: BitMatrix::from_rows(n, duals)?,
    })
}

/// `H·Lᵀ = 0`, no row of `L` is a stabilizer, and the rows of `L` are
/// independent modulo the stabilizers.
pub fn validate_logicals(check: &BitMatrix, logicals: &BitMatrix) -> Result<bool> {
    if check.num_cols() != logicals.num_cols() {
        return Err(Error::dim(
            "validate_logicals",
            check.num_cols(),
            logicals.num_cols(),
        ));
    }
    let commute = check
        .mul_transpose(logicals)?
        .rows()
        .iter()
        .all(BitVector::is_zero);
    if !commute {
        return Ok(false);
    }
    for row in logicals.rows() {
        if check.in_row_space(row)? {
            return Ok(false);
        }
    }
    let joint = check.stack(logicals)?.rank();
    Ok(joint == check.rank() + logicals.num_rows())
}

/// True iff every row of `a` equals some combination of rows of `b` plus
/// stabilizers, and vice versa.
pub fn coset_equivalent(check: &BitMatrix, a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    let with_a = check.stack(a)?;
    let with_b = check.stack(b)?;
    for row in a.rows() {
        if !with_b.in_row_space(row)? {
            return Ok(false);
        }
    }
    for row in b.rows() {
        if !with_a.in_row_space(row)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Flattening of (logical `i` of block `k`) into a register-wide index,
/// `(k − 1)·K + i`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    pub logicals_per_block: usize,
    pub blocks: usize,
}

impl RegisterLayout {
    /// Layout of level-`level` block outputs: `K_l` logicals per block and
    /// `Π_{j<l} K_j` blocks.
    pub fn for_level(level: usize) -> Self {
        let blocks = (0..level).map(crate::codes::logical_count).product();
        Self {
            logicals_per_block: crate::codes::logical_count(level),
            blocks,
        }
    }

    pub fn len(&self) -> usize {
        self.logicals_per_block * self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn relabel(&self, i: usize, k: usize) -> Result<usize> {
        if i == 0 || i > self.logicals_per_block {
            return Err(Error::Index {
                context: "logical within block",
                index: i,
                max: self.logicals_per_block,
            });
        }
        if k == 0 || k > self.blocks {
            return Err(Error::Index {
                context: "block within register",
                index: k,
                max: self.blocks,
            });
        }
        Ok((k - 1) * self.logicals_per_block + i)
    }

    /// Inverse of [`RegisterLayout::relabel`].
    pub fn unlabel(&self, index: usize) -> Result<(usize, usize)> {
        if index == 0 || index > self.len() {
            return Err(Error::Index {
                context: "register logical",
                index,
                max: self.len(),
            });
        }
        let zero = index - 1;
        Ok((
            zero % self.logicals_per_block + 1,
            zero / self.logicals_per_block + 1,
        ))
    }
}
