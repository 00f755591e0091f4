//! Exact integer powers and roots.
//!
//! Everything here is integer-only: floating point never decides a floor.

use crate::error::{Error, Result};

/// `base^exp`, or `None` on 64-bit overflow.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

pub fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

/// Like [`checked_pow`] but reports the failure as an [`Error::Overflow`].
pub fn pow(base: u64, exp: u32) -> Result<u64> {
    checked_pow(base, exp).ok_or_else(|| Error::Overflow(format!("{base}^{exp} exceeds u64")))
}

/// Largest `r` with `r^k <= x`, found by binary search.
pub fn iroot(x: u64, k: u32) -> u64 {
    iroot_u128(x as u128, k) as u64
}

/// Largest `r` with `r^k <= x` for 128-bit `x`.
pub fn iroot_u128(x: u128, k: u32) -> u128 {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || x < 2 {
        return x;
    }
    // r <= 2^ceil(128/k)
    let bits = 128 - x.leading_zeros();
    let mut hi: u128 = 1u128 << bits.div_ceil(k).min(127);
    let mut lo: u128 = 1;
    // invariant: lo^k <= x < hi^k (hi may not overflow-check cleanly, handled below)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match checked_pow_u128(mid, k) {
            Some(p) if p <= x => lo = mid,
            _ => hi = mid,
        }
    }
    lo
}

/// Smallest `r` with `r^k >= x`.
pub fn iroot_ceil(x: u64, k: u32) -> u64 {
    let r = iroot(x, k);
    if r.pow(k) == x {
        r
    } else {
        r + 1
    }
}

pub fn is_perfect_power(x: u64, k: u32) -> bool {
    let r = iroot(x, k);
    checked_pow(r, k) == Some(x)
}
