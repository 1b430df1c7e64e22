//! Seeded randomness.
//!
//! Every random object in the crate (ensemble permutations, labels, channel
//! noise) is drawn from a [`ChaCha8Rng`] seeded with a 64-bit value.
//! Permutations use the Fisher–Yates shuffle from `rand`. Seeds for sub-tasks
//! (sweep points, frames, search candidates) are derived with
//! [`derive_seed`], a SplitMix64 finalizer over `(base, index)`, so work items
//! can be evaluated in any order and still reproduce.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Identifier recorded alongside generated codes.
pub const ALGORITHM_ID: &str = "chacha8-fisher-yates/rand-0.9";

pub type WorkbenchRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> WorkbenchRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent child seed for work item `index` under `base`.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    splitmix64(splitmix64(base) ^ index.wrapping_mul(0xd6e8_feb8_6659_fd93))
}
