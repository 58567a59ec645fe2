//! Helpers shared by the integration suites: a tiny deterministic PRNG, a
//! generator of pseudo-random affine unimodular maps, and the catalog of
//! named polytopes the suites sweep over.

use num_bigint::BigInt;
use toric_secant::classify::Family;
use toric_secant::families;
use toric_secant::polytope::LatticePolytope;
use toric_secant::zlinalg::{AffineUnimodularMap, IntMat, IntVec};

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
    random_unimodular_map_with(rng, n, 8)
}

/// Like [`random_unimodular_map`] with a chosen shear count; fewer shears
/// keep coordinates small enough for lattice-point sweeps over the image.
pub fn random_unimodular_map_with(
    rng: &mut SplitMix64,
    n: usize,
    shears: usize,
) -> AffineUnimodularMap {
    let mut m = IntMat::identity(n);
    if n > 1 {
        for _ in 0..shears {
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

/// The named constructions with their expected classification labels: the
/// four catalog families for n ≤ `max_n`, then the general examples.
pub fn labeled_members(max_n: usize) -> Vec<(String, LatticePolytope, Family)> {
    let mut out: Vec<(String, LatticePolytope, Family)> = Vec::new();
    for n in 1..=max_n {
        out.push((
            format!("Δ{n}"),
            families::simplex(n, 1).unwrap(),
            Family::Simplex { n },
        ));
        out.push((
            format!("2Δ{n}"),
            families::simplex(n, 2).unwrap(),
            Family::DoubledSimplex { n },
        ));
        for k in 0..n.saturating_sub(1) {
            out.push((
                format!("(2Δ{n})_{k}"),
                families::truncated(n, k as i64).unwrap(),
                Family::TruncatedDoubledSimplex { n, k },
            ));
        }
        for l in 1..=n / 2 {
            let m = n - l;
            out.push((
                format!("Δ{l}×Δ{m}"),
                families::product_of_dilated_simplices(&[(1, l), (1, m)]).unwrap(),
                Family::ProductOfSimplices { l, m },
            ));
        }
    }
    out.push(("hexagon".into(), families::hexagon(), Family::General));
    out.push(("cube".into(), families::cube(3).unwrap(), Family::General));
    out.push((
        "3Δ2".into(),
        families::simplex(2, 3).unwrap(),
        Family::General,
    ));
    let scrolls: Vec<Vec<u64>> = vec![
        vec![1, 3],
        vec![2, 2],
        vec![1, 4],
        vec![1, 1, 3],
        vec![1, 2, 2],
        vec![2, 2, 2],
        vec![1, 1, 1, 3],
        vec![1, 1, 2, 2],
    ];
    for ds in scrolls {
        out.push((
            format!("P_{ds:?}"),
            families::scroll_polytope(&ds).unwrap(),
            Family::General,
        ));
    }
    out
}

/// The catalog polytopes of dimension ≤ `max_n` the property sweeps run on.
pub fn catalog(max_n: usize) -> Vec<(String, LatticePolytope)> {
    let mut out: Vec<(String, LatticePolytope)> = labeled_members(max_n)
        .into_iter()
        .map(|(name, p, _)| (name, p))
        .filter(|(_, p)| p.dim() <= max_n)
        .collect();
    out.push((
        "2Δ1×Δ1".into(),
        families::product_of_dilated_simplices(&[(2, 1), (1, 1)]).unwrap(),
    ));
    out.push(("P_[1,2]".into(), families::scroll_polytope(&[1, 2]).unwrap()));
    out.push((
        "P_[1,1,2]".into(),
        families::scroll_polytope(&[1, 1, 2]).unwrap(),
    ));
    out
}
