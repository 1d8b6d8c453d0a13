// SPDX-License-Identifier: Apache-2.0

//! Code families: the quantum Hamming ladder and the planar surface code.

mod hamming;
mod surface;

pub use hamming::{
    block_len, hamming_check_matrix, logical_count, syndrome, HammingLevelCode, Syndrome,
    MAX_CHECK_BITS,
};
pub use surface::{build_surface, Boundary, DistanceParity, SurfaceLattice};
