// SPDX-License-Identifier: Apache-2.0

//! Decoders: the recursive Hamming decoder and surface-code matching.

mod hamming;
mod mwpm;

pub use hamming::{
    decode_block, decode_concatenated, decode_level, hamming_decode_block, BlockOutcome,
    ConcatenatedDecoder, DecodeScratch, PackedLevel,
};
pub use mwpm::{
    mwpm_decode_surface, mwpm_match, surface_logical_failure, DefectSet, MatchingOutcome, Partner,
};
