//! Counter-addressed random streams.
//!
//! Every stream is a ChaCha8 keystream keyed by a 64-bit seed. Sample index
//! `n` owns keystream words `4n .. 4n + 4`, so any index range can be
//! regenerated without replaying the indices before it.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Keystream words consumed per sample index.
pub(crate) const WORDS_PER_INDEX: u128 = 4;

/// Uniform on `(0, 1]` from the top 53 bits.
#[inline]
pub(crate) fn unit_open(x: u64) -> f64 {
    ((x >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Pair of independent standard normals by Box-Muller.
#[inline]
pub(crate) fn box_muller(u1: f64, u2: f64) -> (f64, f64) {
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
    (r * c, r * s)
}

/// Mixes a base seed with two labels into an independent stream key.
pub fn derive_seed(seed: u64, a: u64, b: u64) -> u64 {
    let mut x = seed ^ 0x6a09_e667_f3bc_c908;
    for v in [a, b] {
        x = splitmix(x ^ splitmix(v));
    }
    x
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Normal pairs for consecutive sample indices starting at `first`.
pub(crate) struct IndexedNormals {
    rng: ChaCha8Rng,
}

impl IndexedNormals {
    pub(crate) fn new(seed: u64, first: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(WORDS_PER_INDEX * first as u128);
        Self { rng }
    }

    /// Two standard normals for the next index.
    #[inline]
    pub(crate) fn next_pair(&mut self) -> (f64, f64) {
        let u1 = unit_open(self.rng.next_u64());
        let u2 = unit_open(self.rng.next_u64());
        box_muller(u1, u2)
    }
}

/// Plain sequential uniform source for signal synthesis.
pub(crate) struct Uniforms {
    rng: ChaCha8Rng,
}

impl Uniforms {
    pub(crate) fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform on `[lo, hi]`.
    pub(crate) fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * unit_open(self.rng.next_u64())
    }
}
