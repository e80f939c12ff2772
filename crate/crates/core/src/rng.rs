//! Seeded, portable randomness.
//!
//! Every random draw in the crate goes through [`Rng`], a thin wrapper over
//! ChaCha8 (`rand_chacha`). A 64-bit seed is expanded to the 256-bit ChaCha
//! key with `SeedableRng::seed_from_u64` (PCG32 expansion, as documented by
//! `rand_core` 0.6). The derived primitives are defined here rather than
//! borrowed from `rand` so that their exact output never depends on a
//! distribution crate's version:
//!
//! * [`Rng::below`]: unbiased integer in `[0, n)` by rejection of the top
//!   `2^64 mod n` values, then `x % n`.
//! * [`Rng::unit`]: `(x >> 11) * 2^-53`, a double in `[0, 1)`.
//! * [`Rng::shuffle`]: Fisher–Yates from the last element down.
//!
//! Independent streams are obtained with [`derive_seed`], a pure function of
//! a parent seed, a text tag and an index.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct Rng(ChaCha8Rng);

impl Rng {
    pub fn seeded(seed: u64) -> Self {
        Rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform integer in `[0, n)`. `n` must be positive.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n + 1) % n;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return (x % n) as usize;
            }
        }
    }

    /// Uniform double in `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }

    /// `count` distinct elements of `pool`, uniformly without replacement,
    /// returned in ascending order.
    pub fn choose_sorted(&mut self, pool: &[usize], count: usize) -> Vec<usize> {
        let mut scratch = pool.to_vec();
        let count = count.min(scratch.len());
        // partial Fisher–Yates from the front
        for i in 0..count {
            let j = i + self.below(scratch.len() - i);
            scratch.swap(i, j);
        }
        scratch.truncate(count);
        scratch.sort_unstable();
        scratch
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn fnv1a(text: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in text.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

/// Child seed for the stream named `tag` at position `index` under `parent`.
///
/// `splitmix64(parent ^ splitmix64(fnv1a(tag) ^ splitmix64(index)))`.
pub fn derive_seed(parent: u64, tag: &str, index: u64) -> u64 {
    splitmix64(parent ^ splitmix64(fnv1a(tag) ^ splitmix64(index)))
}
