//! Tabulated Waring constants for 1 <= k <= 9.
//!
//! Values are transcribed as published. Where two published listings of
//! g(1,k) disagree, both are kept (`small_g1` and `small_g1_listed`).

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Proven,
    Conjectured,
    UpperBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tagged {
    pub value: u64,
    pub status: Status,
}

const fn proven(value: u64) -> Tagged {
    Tagged { value, status: Status::Proven }
}

const fn conj(value: u64) -> Tagged {
    Tagged { value, status: Status::Conjectured }
}

const fn ub(value: u64) -> Tagged {
    Tagged { value, status: Status::UpperBound }
}

/// Best known n* witness for a given k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NStarEntry {
    pub nstar: u64,
    pub d: u32,
    /// `G(k) + d`, the last part count the witness is listed for.
    pub big_g_plus_d: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownBounds {
    pub k: u32,
    /// g(k): every positive integer is a sum of at most g(k) k-th powers.
    pub g: Tagged,
    /// G(k), or its best upper bound.
    pub big_g: Tagged,
    /// G(1,k), or its best upper bound.
    pub big_g1: Tagged,
    /// G(1,k) as listed next to the n* witnesses; differs from `big_g1` for k >= 5.
    pub big_g1_nstar_table: Option<Tagged>,
    /// g(1,k).
    pub small_g1: Tagged,
    /// An alternative published listing of g(1,k) (15, 22, 58, 244 for k = 3, 4, 5, 7).
    pub small_g1_listed: u64,
    pub nstar: Option<NStarEntry>,
}

impl KnownBounds {
    /// True when the two published g(1,k) listings disagree for this k.
    pub fn small_g1_discrepancy(&self) -> bool {
        self.small_g1.value != self.small_g1_listed
    }
}

const fn ns(nstar: u64, d: u32, big_g_plus_d: u32) -> Option<NStarEntry> {
    Some(NStarEntry { nstar, d, big_g_plus_d })
}

static TABLE: [KnownBounds; 9] = [
    KnownBounds {
        k: 1,
        g: proven(1),
        big_g: proven(1),
        big_g1: proven(1),
        big_g1_nstar_table: None,
        small_g1: proven(1),
        small_g1_listed: 1,
        nstar: None,
    },
    KnownBounds {
        k: 2,
        g: proven(4),
        big_g: proven(4),
        big_g1: proven(5),
        big_g1_nstar_table: Some(proven(5)),
        small_g1: proven(6),
        small_g1_listed: 6,
        nstar: ns(169, 1, 5),
    },
    KnownBounds {
        k: 3,
        g: proven(9),
        big_g: ub(7),
        big_g1: ub(9),
        big_g1_nstar_table: Some(ub(9)),
        small_g1: proven(14),
        small_g1_listed: 15,
        nstar: ns(1072, 2, 9),
    },
    KnownBounds {
        k: 4,
        g: proven(19),
        big_g: proven(16),
        big_g1: ub(18),
        big_g1_nstar_table: Some(ub(18)),
        small_g1: proven(21),
        small_g1_listed: 22,
        nstar: ns(77900162, 2, 18),
    },
    KnownBounds {
        k: 5,
        g: proven(37),
        big_g: ub(17),
        big_g1: ub(20),
        big_g1_nstar_table: Some(conj(11)),
        small_g1: proven(57),
        small_g1_listed: 58,
        nstar: ns(100000497376, 3, 20),
    },
    KnownBounds {
        k: 6,
        g: proven(73),
        big_g: ub(24),
        big_g1: ub(29),
        big_g1_nstar_table: Some(conj(18)),
        small_g1: proven(78),
        small_g1_listed: 78,
        nstar: ns(41253168892, 5, 29),
    },
    KnownBounds {
        k: 7,
        g: proven(143),
        big_g: ub(33),
        big_g1: ub(40),
        big_g1_nstar_table: Some(conj(25)),
        small_g1: proven(245),
        small_g1_listed: 244,
        nstar: ns(822480142011, 7, 40),
    },
    KnownBounds {
        k: 8,
        g: proven(279),
        big_g: ub(42),
        big_g1: ub(52),
        big_g1_nstar_table: Some(conj(47)),
        small_g1: proven(334),
        small_g1_listed: 334,
        nstar: ns(17373783550950, 9, 51),
    },
    KnownBounds {
        k: 9,
        g: proven(548),
        big_g: ub(50),
        big_g1: ub(117),
        big_g1_nstar_table: Some(conj(121)),
        small_g1: conj(717),
        small_g1_listed: 717,
        nstar: ns(25636699123453928, 14, 64),
    },
];

pub fn known_bounds(k: u32) -> Result<&'static KnownBounds> {
    match k {
        1..=9 => Ok(&TABLE[k as usize - 1]),
        _ => Err(Error::NotFound(k)),
    }
}

pub fn all_known_bounds() -> &'static [KnownBounds] {
    &TABLE
}
