//! Shared helpers for the unit tests: a tiny deterministic PRNG and a
//! generator of pseudo-random affine unimodular maps, so property-style
//! loops are reproducible without an RNG dependency.

use num_bigint::BigInt;

use crate::zlinalg::{AffineUnimodularMap, IntMat, IntVec};

/// splitmix64; good enough to scatter test inputs, trivially seedable.
pub struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish integer in [-bound, bound].
    pub fn small(&mut self, bound: i64) -> i64 {
        let span = (2 * bound + 1) as u64;
        (self.next() % span) as i64 - bound
    }

    /// Uniform-ish integer in [0, bound).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }
}

/// A pseudo-random element of AGL_n(Z), built from a handful of elementary
/// shears and a small translation; entries stay modest so images remain
/// cheap to hull.
pub fn random_unimodular_map(rng: &mut SplitMix64, n: usize) -> AffineUnimodularMap {
    let mut m = IntMat::identity(n);
    if n > 1 {
        for _ in 0..8 {
            let i = rng.below(n as u64) as usize;
            let j = rng.below(n as u64) as usize;
            if i == j {
                continue;
            }
            let s = BigInt::from(if rng.below(2) == 0 { 1 } else { -1 });
            for c in 0..n {
                let add = m.at(j, c) * &s;
                *m.at_mut(i, c) += add;
            }
        }
    }
    let t = IntVec::new((0..n).map(|_| BigInt::from(rng.small(4))).collect());
    AffineUnimodularMap::new(m, t).expect("shear products are unimodular")
}
