//! Seeded randomness.
//!
//! Every stochastic routine takes a [`SimRng`]. Monte Carlo loops never
//! share one generator across shots: shot `i` of a run seeded with `seed`
//! draws from [`child_rng(seed, i)`](child_rng), which is the ChaCha8
//! stream number `i` under the key derived from `seed`. Results are then
//! independent of scheduling order and thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Child stream `index` of the run keyed by `seed`.
pub fn child_rng(seed: u64, index: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// An independent seed for sub-run `index` (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
