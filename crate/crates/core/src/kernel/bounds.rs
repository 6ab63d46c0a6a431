//! Sunflower and kernel-size thresholds, in arbitrary precision.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, i| acc * i)
}

/// `d * d! * (z - 1)^d`: families with more sets than this contain a
/// sunflower with `z` petals.
pub fn sunflower_threshold(d: usize, z: usize) -> BigInt {
    let base: BigInt = BigInt::from(z) - 1;
    BigInt::from(d) * factorial(d) * base.pow(d as u32)
}

/// `d(k·d − 1) + 1`, the inner term shared by both bounds. Negative for
/// `k = 0, d ≥ 2`.
fn petal_term(d: usize, k: usize) -> BigInt {
    let d_ = BigInt::from(d);
    &d_ * (BigInt::from(k) * &d_ - 1) + 1
}

/// `f_d(k) = d · d! · (d(k·d − 1) + 1)^d`.
pub fn f_bound(d: usize, k: usize) -> BigInt {
    BigInt::from(d) * factorial(d) * petal_term(d, k).pow(d as u32)
}

/// `g_d(k) = d · d! · (d^(d−1) · (d(k·d − 1) + 1) + d · k · f_d(k))^d`.
pub fn g_bound(d: usize, k: usize) -> BigInt {
    let d_ = BigInt::from(d);
    let inner = d_.pow(d.saturating_sub(1) as u32) * petal_term(d, k) + &d_ * BigInt::from(k) * f_bound(d, k);
    d_ * factorial(d) * inner.pow(d as u32)
}

/// Sunflower size both reduction rules act on: `d(k·d − 1) + 2`.
pub(crate) fn rule_sunflower_size(d: usize, k: usize) -> BigInt {
    petal_term(d, k) + 1
}

/// Sunflower size searched for by the external-set rule before filtering:
/// `d^(d−1) · (d(k·d − 1) + 1) + d · k · f_d(k) + 1`.
pub(crate) fn external_search_size(d: usize, k: usize) -> BigInt {
    let d_ = BigInt::from(d);
    d_.pow(d.saturating_sub(1) as u32) * petal_term(d, k) + &d_ * BigInt::from(k) * f_bound(d, k) + 1
}

/// Clamps a threshold into a usable petal count: at least 2, saturating at
/// `usize::MAX`.
pub(crate) fn petal_count(v: &BigInt) -> usize {
    if *v < BigInt::from(2) {
        2
    } else {
        v.to_usize().unwrap_or(usize::MAX)
    }
}
