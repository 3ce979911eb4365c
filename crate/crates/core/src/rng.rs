//! Seeded random streams.
//!
//! Every stochastic routine takes an explicit `u64` seed. A seed expands into
//! a ChaCha8 generator; independent sub-streams of the same seed are selected
//! with ChaCha's 64-bit stream id, so work split into chunks draws the same
//! numbers no matter how the chunks are scheduled. Seeds for independent
//! sub-runs (one per transmitted bit, for instance) are derived with
//! [`derive_seed`].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Generator for `(seed, stream)`.
pub fn stream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// SplitMix64 finalizer over `seed` and `index`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Inverse-CDF draw over `probs` for a uniform `u ∈ [0, total)`.
///
/// Outcomes are scanned in order; a `u` sitting exactly on a cumulative
/// boundary goes to the lower index. Zero-probability outcomes are never
/// returned. Falls back to the last positive outcome when rounding leaves
/// `u` past the final boundary.
pub fn inverse_cdf(probs: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        acc += p;
        last_positive = i;
        if u <= acc {
            return i;
        }
    }
    last_positive
}
