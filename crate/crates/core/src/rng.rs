//! Seeded, stream-addressable randomness.
//!
//! A [`RandomSource`] is a `(seed, stream)` pair. The generator is ChaCha8 keyed
//! by the seed with the ChaCha stream id set to `stream`, so identical pairs give
//! bit-identical draws and distinct streams never overlap.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RandomSource {
    pub seed: u64,
    pub stream: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        RandomSource { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// Independent child source for worker or trial `index`.
    pub fn child(&self, index: u64) -> RandomSource {
        RandomSource {
            seed: splitmix64(self.seed ^ splitmix64(index.wrapping_add(0x5851_F42D_4C95_7F2D))),
            stream: self.stream,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform `size`-subset of `0..n` by partial Fisher–Yates. Panics if `size > n`.
pub fn sample_subset<R: Rng + ?Sized>(rng: &mut R, n: usize, size: usize) -> Bitset {
    assert!(size <= n, "subset size {size} exceeds ground set {n}");
    let mut pool: Vec<usize> = (0..n).collect();
    let mut out = Bitset::new(n);
    for i in 0..size {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
        out.insert(pool[i]);
    }
    out
}
