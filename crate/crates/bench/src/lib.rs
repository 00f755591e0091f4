//! Shared inputs for the criterion benches.

use waring_core::sieve::{sieve_exact, RepSieve};

/// Sieve windows exercised by the advance benchmark.
pub const SIEVE_LIMITS: [u64; 3] = [1 << 16, 1 << 20, 1 << 24];

/// A `(j, k)` sieve to advance from; panics on invalid input.
pub fn starting_sieve(k: u32, j: u32, limit: u64) -> RepSieve {
    sieve_exact(k, j, limit).expect("benchmark sieve parameters are valid")
}
