//! Seeded randomness.
//!
//! Every random choice in the crate flows from an [`RngSpec`]: a 64-bit seed
//! fed to ChaCha8 (`rand_chacha`). ChaCha output is defined bit-for-bit by
//! the cipher, so a spec reproduces the same stream on every platform.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Identifier recorded in reports next to every seed.
pub const RNG_ALGORITHM: &str = "chacha8/rand_chacha-0.9/seed_from_u64";

pub type Rng = ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
}

impl RngSpec {
    pub const fn new(seed: u64) -> Self {
        RngSpec { seed }
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    pub fn rng(&self) -> Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// An independent child stream, e.g. one per restart or per retry.
    pub fn derive(&self, stream: u64) -> RngSpec {
        RngSpec::new(mix64(self.seed ^ mix64(stream.wrapping_add(0x9e37_79b9_7f4a_7c15))))
    }
}

impl From<u64> for RngSpec {
    fn from(seed: u64) -> Self {
        RngSpec::new(seed)
    }
}

/// SplitMix64 finalizer. A bijection on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-trial seed for an experiment cell.
///
/// For a fixed master seed this is injective on `(cell, trial)`: the pair is
/// packed into one word and pushed through two bijections.
pub fn trial_seed(master: u64, cell: u32, trial: u32) -> u64 {
    let packed = ((cell as u64) << 32) | trial as u64;
    mix64(packed ^ mix64(master))
}
