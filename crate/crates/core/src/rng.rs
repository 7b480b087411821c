//! Portable random streams.
//!
//! Every random stream in the crate is a [`ChaCha8Rng`] seeded with a 64-bit
//! value. ChaCha output is specified bit-for-bit and does not depend on the
//! platform, so instances and runs are reproducible across machines.
//!
//! Sub-streams are derived with [`derive_seed`]: the master seed is folded with
//! each path component through the SplitMix64 finaliser. For example the
//! stream that fills variable `n` of objective `m` of an instance seeded with
//! `s` is `stream(derive_seed(s, &[m, n]))`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds `parts` into `master`, one SplitMix64 step per component.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    parts.iter().fold(mix64(master), |acc, &p| {
        mix64(acc.wrapping_add(GOLDEN_GAMMA).wrapping_add(mix64(p)))
    })
}

/// 64-bit FNV-1a, used to turn identifiers into seed components.
pub fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn stream(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
