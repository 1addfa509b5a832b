//! Deterministic sub-seeds.
//!
//! Every random stream in the crate is keyed by `(master seed, purpose, index)`
//! and never by thread or scheduling order, so results do not depend on the
//! degree of parallelism.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags mixed into derived seeds.
pub mod stream {
    pub const ICR_NODE: u64 = 1;
    pub const THRESHOLD_RUN: u64 = 2;
    pub const CENTRALITY_BASE: u64 = 3;
}

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(master: u64, purpose: u64, index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ purpose) ^ index)
}

pub fn rng_for(master: u64, purpose: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, purpose, index))
}
