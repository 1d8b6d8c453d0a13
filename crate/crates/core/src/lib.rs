// SPDX-License-Identifier: Apache-2.0

//! Concatenated quantum Hamming codes and surface-Hamming codes under
//! independent bit-flip noise with perfect syndrome extraction.
//!
//! Everything runs on GF(2) error frames: no quantum state is simulated.
//! The crate covers code construction ([`codes`]), logical-operator
//! extraction ([`logical`]), the level wiring ([`concat`]), decoding
//! ([`decode`]) and Monte Carlo estimation ([`sim`]).

pub mod codes;
pub mod concat;
pub mod decode;
pub mod error;
pub mod gf2;
pub mod logical;
pub mod sim;

pub use codes::{build_surface, hamming_check_matrix, HammingLevelCode, SurfaceLattice, Syndrome};
pub use concat::{overhead, Base, ConcatenationSchema, OverheadRow};
pub use decode::{ConcatenatedDecoder, DefectSet};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use logical::{extract_logicals, validate_logicals, GeneratorSet, LogicalMatrix};
pub use sim::{ErrorModel, Execution, RateEstimate, TrialStats};
