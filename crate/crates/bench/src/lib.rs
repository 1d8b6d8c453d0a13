// SPDX-License-Identifier: Apache-2.0

//! Pre-sampled decoder inputs, so that benchmarks time decoding only.

use surfham_core::concat::{Base, ConcatenationSchema};
use surfham_core::decode::{ConcatenatedDecoder, DefectSet};
use surfham_core::sim::{trial_rng, ErrorModel};
use surfham_core::{Result, SurfaceLattice};

/// Physical error rate shared by the paired benchmarks.
pub const BENCH_P: f64 = 0.01526;

/// Concatenated decoder for `level` Hamming levels over Steane blocks and
/// `count` packed input frames.
pub fn hamming_inputs(level: usize, p: f64, count: u64, seed: u64) -> Result<(ConcatenatedDecoder, Vec<Vec<u64>>)> {
    let decoder = ConcatenatedDecoder::new(&ConcatenationSchema::build(level, Base::Steane)?)?;
    let model = ErrorModel::new(p)?;
    let (n, block) = (decoder.input_len(), decoder.lowest_block_len());
    let frames = (0..count)
        .map(|t| {
            let mut words = vec![0u64; decoder.input_words()];
            model.for_each_flip(n, &mut trial_rng(seed, t), |j| words[j / block] |= 1 << (j % block));
            words
        })
        .collect();
    Ok((decoder, frames))
}

/// Distance-`d` patch and `count` defect sets from i.i.d. bit flips.
pub fn surface_inputs(d: usize, p: f64, count: u64, seed: u64) -> Result<(SurfaceLattice, Vec<DefectSet>)> {
    let lattice = SurfaceLattice::new(d)?;
    let model = ErrorModel::new(p)?;
    let defects = (0..count)
        .map(|t| {
            let mut syndrome = vec![false; lattice.num_checks()];
            model.for_each_flip(lattice.num_data(), &mut trial_rng(seed, t), |q| {
                for &c in &lattice.data_checks()[q] {
                    syndrome[c] ^= true;
                }
            });
            DefectSet::new((0..syndrome.len()).filter(|&c| syndrome[c]).collect())
        })
        .collect();
    Ok((lattice, defects))
}

#[cfg(test)]
mod tests {
    use surfham_core::decode::{mwpm_match, DecodeScratch};

    use super::*;

    #[test]
    fn inputs_decode() {
        let (decoder, frames) = hamming_inputs(2, BENCH_P, 8, 1).unwrap();
        let mut scratch = DecodeScratch::new();
        for f in &frames {
            assert_eq!(f.len(), decoder.input_words());
            assert_eq!(decoder.decode(f, &mut scratch), decoder.decode_parallel(f).as_slice());
        }
        let (lattice, defects) = surface_inputs(5, 0.05, 8, 1).unwrap();
        assert!(defects.iter().any(|s| !s.is_empty()));
        for s in &defects {
            mwpm_match(s, &lattice).unwrap();
        }
    }
}
