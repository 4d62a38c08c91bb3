//! Seeded randomness.
//!
//! Every stochastic routine draws from [`SimRng`], ChaCha with 8 rounds as
//! implemented by `rand_chacha`, keyed through `SeedableRng::seed_from_u64`.
//! Independent per-trial substreams come from [`split`]: the master seed keys
//! the cipher, the trial index selects the ChaCha stream, and the first 64-bit
//! word of that stream becomes the trial's own seed. The mapping is stable
//! across platforms and thread counts, so any aggregate over trials is
//! bit-reproducible no matter how the trials are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand::{Rng, RngCore};

pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Derive the seed of substream `index` from `master`.
pub fn split(master: u64, index: u64) -> u64 {
    let mut rng = SimRng::seed_from_u64(master);
    rng.set_stream(index);
    rng.next_u64()
}
