//! Seeded randomness.
//!
//! Every random choice in the crate draws from ChaCha8 seeded through
//! `seed_from_u64`, which is platform independent. Sweeps derive per-instance
//! seeds as `base + index` (wrapping).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn derive_seed(base: u64, index: u64) -> u64 {
    base.wrapping_add(index)
}
