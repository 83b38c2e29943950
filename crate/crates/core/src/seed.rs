//! Seed derivation and the counter-based phase stream.
//!
//! Every random object in the crate is a pure function of a 64-bit seed.
//! Channel phases come from ChaCha8 with one stream per matrix row, so any
//! single entry can be regenerated by seeking without materializing the
//! whole matrix.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from a master seed and a path of indices.
///
/// The result depends only on the inputs, never on evaluation order, so
/// trials can run in any order or in parallel.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |acc, &x| splitmix64(acc ^ splitmix64(x)))
}

/// General-purpose RNG for a derived seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Maps 64 random bits to a uniform double in `[0, 1)`.
#[inline]
pub fn unit_f64(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Row-addressable generator of uniform phases in `[-π, π)`.
#[derive(Debug, Clone, Copy)]
pub struct PhaseStream {
    seed: u64,
}

impl PhaseStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn row_rng(&self, row: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(row as u64);
        rng
    }

    /// Fills `out` with the phases of `row`, columns `0..out.len()`.
    pub fn fill_row(&self, row: usize, out: &mut [f64]) {
        let mut rng = self.row_rng(row);
        for x in out.iter_mut() {
            *x = bits_to_phase(rng.next_u64());
        }
    }

    /// Phase at `(row, col)`, identical to the value `fill_row` produces.
    pub fn phase(&self, row: usize, col: usize) -> f64 {
        let mut rng = self.row_rng(row);
        // One u64 consumes two 32-bit words.
        rng.set_word_pos(2 * col as u128);
        bits_to_phase(rng.next_u64())
    }
}

#[inline]
fn bits_to_phase(bits: u64) -> f64 {
    crate::channel::wrap_angle(unit_f64(bits) * std::f64::consts::TAU - std::f64::consts::PI)
}
