//! Small exact combinatorics helpers shared by the formula modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Binomial coefficient, 0 when k > n.
pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Multinomial coefficient (Σ parts)! / ∏ parts!.
pub(crate) fn multinomial(parts: &[u64]) -> BigInt {
    let total: u64 = parts.iter().sum();
    let mut acc = factorial(total);
    for &p in parts {
        acc /= factorial(p);
    }
    acc
}
