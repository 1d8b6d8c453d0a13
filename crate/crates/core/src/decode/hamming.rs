// SPDX-License-Identifier: Apache-2.0

//! Bottom-up Hamming decoding over logical error frames.
//!
//! Every level reads its block syndrome as a binary number `N`, flips qubit
//! `N` of the block (nothing when `N = 0`) and passes `L·residual` upward as
//! the next level's frame. Two implementations live here: a reference one
//! on [`BitVector`]s that follows the procedure literally, and
//! [`ConcatenatedDecoder`], a packed word-per-block version used by the
//! Monte Carlo campaigns.

use rayon::prelude::*;

use crate::codes::{syndrome, HammingLevelCode, Syndrome};
use crate::concat::ConcatenationSchema;
use crate::error::{Error, Result};
use crate::gf2::BitVector;

/// `N = Σ sᵢ·2^i`; `0` means no correction, otherwise the 1-based qubit to
/// flip.
pub fn hamming_decode_block(s: &Syndrome) -> usize {
    s.value()
}

/// Outcome of correcting one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockOutcome {
    /// 1-based corrected qubit, `0` when none.
    pub corrected: usize,
    /// `error ⊕ correction`.
    pub residual: BitVector,
    /// Logical flips `L·residual`.
    pub logical: BitVector,
}

pub fn decode_block(code: &HammingLevelCode, frame: &BitVector) -> Result<BlockOutcome> {
    let s = syndrome(code.check_matrix(), frame)?;
    let corrected = hamming_decode_block(&s);
    let mut residual = frame.clone();
    if corrected != 0 {
        residual.flip(corrected - 1);
    }
    let logical = code.logical_matrix().mul_vec(&residual)?;
    Ok(BlockOutcome {
        corrected,
        residual,
        logical,
    })
}

/// Decodes independent blocks of one level; output `i` is the logical frame
/// (length `K_l`) of block `i`.
pub fn decode_level(frames: &[BitVector], code: &HammingLevelCode) -> Result<Vec<BitVector>> {
    frames
        .iter()
        .map(|f| decode_block(code, f).map(|o| o.logical))
        .collect()
}

/// Reference concatenated decoder. `input` holds one bit per base register
/// (physical qubits for a Steane base, surface patches otherwise); the
/// result is the final logical frame of length `total_logical`, indexed
/// `(k−1)·K + i` at every level.
pub fn decode_concatenated(input: &BitVector, schema: &ConcatenationSchema) -> Result<BitVector> {
    if input.len() != schema.input_len() {
        return Err(Error::dim("concatenated frame", schema.input_len(), input.len()));
    }
    let mut registers: Vec<BitVector> = input.iter().map(|b| BitVector::from_bools([b])).collect();
    for code in schema.levels() {
        let n = code.block_len();
        if registers.len() % n != 0 {
            return Err(Error::Internal(format!(
                "{} registers do not group into blocks of {n}",
                registers.len()
            )));
        }
        let mut next = Vec::with_capacity(registers.len() / n);
        for instance in registers.chunks(n) {
            let per_register = instance[0].len();
            let blocks: Vec<BitVector> = (0..per_register)
                .map(|k| BitVector::from_bools(instance.iter().map(|reg| reg.get(k))))
                .collect();
            let outputs = decode_level(&blocks, code)?;
            next.push(BitVector::concat(&outputs));
        }
        registers = next;
    }
    match registers.len() {
        1 => Ok(registers.pop().expect("one register")),
        other => Err(Error::Internal(format!("{other} top registers remain after decoding"))),
    }
}

/// One Hamming level on packed words: bit `j` of a word is qubit `j + 1`.
#[derive(Clone, Debug)]
pub struct PackedLevel {
    n: usize,
    k: usize,
    logical_rows: Vec<u64>,
    table: Option<Vec<u64>>,
}

/// Blocks up to this length use a full lookup table.
const TABLE_MAX_LEN: usize = 15;

impl PackedLevel {
    pub fn new(code: &HammingLevelCode) -> Result<Self> {
        let n = code.block_len();
        if n > 63 || code.num_logicals() > 64 {
            return Err(Error::param(
                "level",
                format!("packed decoding supports blocks of at most 63 qubits, got {n}"),
            ));
        }
        let logical_rows = code.logical_matrix().rows().iter().map(BitVector::to_word).collect();
        let mut level = Self {
            n,
            k: code.num_logicals(),
            logical_rows,
            table: None,
        };
        if n <= TABLE_MAX_LEN {
            let table = (0..1u64 << n).map(|w| level.decode_direct(w)).collect();
            level.table = Some(table);
        }
        Ok(level)
    }

    pub fn block_len(&self) -> usize {
        self.n
    }

    pub fn num_logicals(&self) -> usize {
        self.k
    }

    /// Syndrome value of a block: XOR of the 1-based positions of its flips.
    #[inline]
    pub fn syndrome_value(word: u64) -> usize {
        let mut w = word;
        let mut s = 0usize;
        while w != 0 {
            s ^= w.trailing_zeros() as usize + 1;
            w &= w - 1;
        }
        s
    }

    fn decode_direct(&self, word: u64) -> u64 {
        if word == 0 {
            return 0;
        }
        let n = Self::syndrome_value(word);
        let residual = if n == 0 { word } else { word ^ (1u64 << (n - 1)) };
        self.logical_rows
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, row)| acc | (((row & residual).count_ones() as u64 & 1) << i))
    }

    /// Logical flips of one block.
    #[inline]
    pub fn decode(&self, word: u64) -> u64 {
        match &self.table {
            Some(t) => t[word as usize],
            None => self.decode_direct(word),
        }
    }
}

/// Packed bottom-up decoder for a whole schema.
///
/// Input is one word per lowest-level block: base register `j` is bit
/// `j mod N` of word `j div N`, `N` the lowest block length. Output is one
/// word per top-level block; final logical `b·K + i` is bit `i` of word `b`.
#[derive(Clone, Debug)]
pub struct ConcatenatedDecoder {
    levels: Vec<PackedLevel>,
    /// Instances per stage.
    instances: Vec<usize>,
    /// Logicals per register entering each stage.
    register_logicals: Vec<usize>,
    input_len: usize,
}

/// Reusable buffers for [`ConcatenatedDecoder`].
#[derive(Clone, Debug, Default)]
pub struct DecodeScratch {
    front: Vec<u64>,
    back: Vec<u64>,
}

impl DecodeScratch {
    pub fn new() -> Self {
        Self::default()
    }
}

impl ConcatenatedDecoder {
    pub fn new(schema: &ConcatenationSchema) -> Result<Self> {
        let levels = schema
            .levels()
            .iter()
            .map(PackedLevel::new)
            .collect::<Result<Vec<_>>>()?;
        if levels.is_empty() {
            return Err(Error::param("level", "schema has no Hamming levels to decode"));
        }
        let mut instances = Vec::with_capacity(levels.len());
        let mut register_logicals = Vec::with_capacity(levels.len());
        let mut registers = schema.input_len();
        let mut per_register = 1usize;
        for level in &levels {
            if registers % level.n != 0 {
                return Err(Error::Internal("registers do not divide into blocks".into()));
            }
            instances.push(registers / level.n);
            register_logicals.push(per_register);
            registers /= level.n;
            per_register *= level.k;
        }
        if registers != 1 {
            return Err(Error::Internal(format!("{registers} top registers after wiring")));
        }
        Ok(Self {
            levels,
            instances,
            register_logicals,
            input_len: schema.input_len(),
        })
    }

    /// Bits of the input frame (base registers).
    pub fn input_len(&self) -> usize {
        self.input_len
    }

    /// Words expected by [`ConcatenatedDecoder::decode`].
    pub fn input_words(&self) -> usize {
        self.instances[0]
    }

    pub fn lowest_block_len(&self) -> usize {
        self.levels[0].n
    }

    /// Logical qubits per top-level block word.
    pub fn output_word_bits(&self) -> usize {
        self.levels.last().expect("non-empty").k
    }

    pub fn output_words(&self) -> usize {
        *self.register_logicals.last().expect("non-empty")
    }

    pub fn total_logical(&self) -> usize {
        self.output_words() * self.output_word_bits()
    }

    /// Packs a bit frame into lowest-level block words.
    pub fn pack_input(&self, frame: &BitVector) -> Result<Vec<u64>> {
        if frame.len() != self.input_len {
            return Err(Error::dim("packed frame", self.input_len, frame.len()));
        }
        let n = self.lowest_block_len();
        let mut words = vec![0u64; self.input_words()];
        for j in frame.iter_ones() {
            words[j / n] |= 1 << (j % n);
        }
        Ok(words)
    }

    /// Expands output words into the final logical frame.
    pub fn unpack_output(&self, words: &[u64]) -> BitVector {
        let k = self.output_word_bits();
        let mut out = BitVector::zeros(self.total_logical());
        for (b, &w) in words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                out.set(b * k + w.trailing_zeros() as usize, true);
                w &= w - 1;
            }
        }
        out
    }

    /// Sequential decode; returns the top-level block words.
    pub fn decode<'s>(&self, input: &[u64], scratch: &'s mut DecodeScratch) -> &'s [u64] {
        assert_eq!(input.len(), self.input_words(), "input word count");
        let first = &self.levels[0];
        scratch.front.clear();
        scratch.front.extend(input.iter().map(|&w| first.decode(w)));
        for stage in 1..self.levels.len() {
            self.gather_decode(stage, &scratch.front, &mut scratch.back);
            std::mem::swap(&mut scratch.front, &mut scratch.back);
        }
        &scratch.front
    }

    /// Same result as [`ConcatenatedDecoder::decode`], with the blocks of
    /// each level split across the rayon pool.
    pub fn decode_parallel(&self, input: &[u64]) -> Vec<u64> {
        assert_eq!(input.len(), self.input_words(), "input word count");
        let first = &self.levels[0];
        let mut current: Vec<u64> = input.par_iter().map(|&w| first.decode(w)).collect();
        for stage in 1..self.levels.len() {
            let level = &self.levels[stage];
            let per_register = self.register_logicals[stage];
            let prev_k = self.levels[stage - 1].k;
            let group = per_register / prev_k;
            let mut next = vec![0u64; self.instances[stage] * per_register];
            next.par_chunks_mut(per_register)
                .enumerate()
                .for_each(|(instance, out)| {
                    let regs = &current[instance * level.n * group..(instance + 1) * level.n * group];
                    gather_instance(level, regs, group, prev_k, out);
                });
            current = next;
        }
        current
    }

    fn gather_decode(&self, stage: usize, prev: &[u64], next: &mut Vec<u64>) {
        let level = &self.levels[stage];
        let per_register = self.register_logicals[stage];
        let prev_k = self.levels[stage - 1].k;
        let group = per_register / prev_k;
        next.clear();
        next.resize(self.instances[stage] * per_register, 0);
        for (instance, out) in next.chunks_mut(per_register).enumerate() {
            let regs = &prev[instance * level.n * group..(instance + 1) * level.n * group];
            gather_instance(level, regs, group, prev_k, out);
        }
    }

    /// Convenience wrapper over bit frames.
    pub fn decode_frame(&self, frame: &BitVector) -> Result<BitVector> {
        let words = self.pack_input(frame)?;
        let mut scratch = DecodeScratch::new();
        let out = self.decode(&words, &mut scratch);
        Ok(self.unpack_output(out))
    }
}

/// Collects logical `j` of every register of one instance into block `j`
/// and decodes it in place.
#[inline]
fn gather_instance(level: &PackedLevel, regs: &[u64], group: usize, prev_k: usize, out: &mut [u64]) {
    out.fill(0);
    for (slot, &w) in regs.iter().enumerate() {
        let mut w = w;
        if w == 0 {
            continue;
        }
        let register = slot / group;
        let base = (slot % group) * prev_k;
        while w != 0 {
            out[base + w.trailing_zeros() as usize] |= 1 << register;
            w &= w - 1;
        }
    }
    for block in out.iter_mut() {
        if *block != 0 {
            *block = level.decode(*block);
        }
    }
}
