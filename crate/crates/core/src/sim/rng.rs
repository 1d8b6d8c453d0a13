// SPDX-License-Identifier: Apache-2.0

//! Bit-flip noise and per-trial random streams.
//!
//! Trial `t` of a campaign seeded with `s` always draws from ChaCha8 keyed
//! by `s` on stream `t`, so a trial's errors do not depend on which worker
//! runs it or in what order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVector;

pub type TrialRng = ChaCha8Rng;

/// Random stream of one trial.
pub fn trial_rng(seed: u64, stream: u64) -> TrialRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Independent bit flips with probability `p` per qubit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorModel {
    p: f64,
}

impl ErrorModel {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::param("p", format!("{p} not in [0, 1]")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Calls `f` with the index of every flipped site among `0..n`, in
    /// increasing order. Gaps between flips are drawn geometrically, so the
    /// cost scales with the number of flips rather than with `n`.
    pub fn for_each_flip<R: Rng + ?Sized>(&self, n: usize, rng: &mut R, mut f: impl FnMut(usize)) {
        if self.p <= 0.0 || n == 0 {
            return;
        }
        if self.p >= 1.0 {
            (0..n).for_each(f);
            return;
        }
        let log_q = (-self.p).ln_1p();
        let mut i = 0usize;
        loop {
            // 1 − U lies in (0, 1], keeping the logarithm finite.
            let u: f64 = 1.0 - rng.random::<f64>();
            let skip = (u.ln() / log_q).floor();
            if skip >= (n - i) as f64 {
                return;
            }
            i += skip as usize;
            f(i);
            i += 1;
            if i >= n {
                return;
            }
        }
    }
}

/// `n` independent bits drawn on stream `stream` of `seed`.
pub fn sample_errors(n: usize, model: ErrorModel, seed: u64, stream: u64) -> BitVector {
    let mut rng = trial_rng(seed, stream);
    let mut out = BitVector::zeros(n);
    model.for_each_flip(n, &mut rng, |i| out.set(i, true));
    out
}
