//! Fixed-length packed bit array.
//!
//! Layout: bit `n` lives in word `n / 64` at position `n % 64` (LSB first).
//! Bits at positions `>= len` in the last word are always zero.

use rayon::prelude::*;

use crate::error::{Error, Result};

const WORD_BITS: u64 = 64;

/// Output words handed to one rayon task in [`BitSet::shifted_union`].
const PAR_CHUNK_WORDS: usize = 1 << 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: u64,
    words: Vec<u64>,
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BitSet")
            .field("len", &self.len)
            .field("ones", &self.count_ones())
            .finish()
    }
}

pub fn words_for(len: u64) -> u64 {
    len.div_ceil(WORD_BITS)
}

impl BitSet {
    pub fn new(len: u64) -> Self {
        BitSet {
            len,
            words: vec![0; words_for(len) as usize],
        }
    }

    /// Rebuilds a bit set from raw words, rejecting stray bits past `len`.
    pub fn from_words(len: u64, words: Vec<u64>) -> Result<Self> {
        if words.len() as u64 != words_for(len) {
            return Err(Error::InvalidArgument(format!(
                "{} words cannot hold exactly {len} bits",
                words.len()
            )));
        }
        let set = BitSet { len, words };
        if let Some(&last) = set.words.last() {
            if last & !set.last_word_mask() != 0 {
                return Err(Error::InvalidArgument(
                    "bits set beyond the declared length".into(),
                ));
            }
        }
        Ok(set)
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn last_word_mask(&self) -> u64 {
        match self.len % WORD_BITS {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    fn trim(&mut self) {
        let mask = self.last_word_mask();
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    #[inline]
    pub fn get(&self, i: u64) -> bool {
        if i >= self.len {
            return false;
        }
        (self.words[(i / WORD_BITS) as usize] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: u64) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[(i / WORD_BITS) as usize] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn clear(&mut self, i: u64) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[(i / WORD_BITS) as usize] &= !(1 << (i % WORD_BITS));
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi as u64 * WORD_BITS;
            BitIter(w).map(move |b| base + b)
        })
    }

    /// Positions in `[0, len)` whose bit is clear.
    pub fn iter_zeros(&self) -> impl Iterator<Item = u64> + '_ {
        let mask = self.last_word_mask();
        let last = self.words.len().saturating_sub(1);
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let base = wi as u64 * WORD_BITS;
            let inv = if wi == last { !w & mask } else { !w };
            BitIter(inv).map(move |b| base + b)
        })
    }

    /// Returns `OR_s (self << s)` over all `shifts`, truncated to `len`.
    ///
    /// Output words are split into disjoint ranges processed in parallel;
    /// each range only reads `self`, so the result does not depend on
    /// scheduling or on the order of `shifts`.
    pub fn shifted_union(&self, shifts: &[u64]) -> BitSet {
        let mut out = BitSet::new(self.len);
        out.words
            .par_chunks_mut(PAR_CHUNK_WORDS)
            .enumerate()
            .for_each(|(ci, chunk)| {
                let start = ci * PAR_CHUNK_WORDS;
                for &s in shifts {
                    or_shifted_range(chunk, start, &self.words, s);
                }
            });
        out.trim();
        out
    }
}

/// `dst[i] |= (src << shift)[start + i]` for every word of `dst`.
fn or_shifted_range(dst: &mut [u64], start: usize, src: &[u64], shift: u64) {
    let word_shift = (shift / WORD_BITS) as usize;
    let bit_shift = (shift % WORD_BITS) as u32;
    let first = start.max(word_shift);
    let end = start + dst.len();
    if first >= end {
        return;
    }
    if bit_shift == 0 {
        for w in first..end {
            dst[w - start] |= src[w - word_shift];
        }
    } else {
        for w in first..end {
            let hi = src[w - word_shift] << bit_shift;
            let lo = if w > word_shift {
                src[w - word_shift - 1] >> (64 - bit_shift)
            } else {
                0
            };
            dst[w - start] |= hi | lo;
        }
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;

    #[inline]
    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as u64)
    }
}
