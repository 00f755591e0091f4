//! Bit-parallel representability sieve.
//!
//! A [`RepSieve`] at `(j, k)` marks every `n < limit` that is a sum of exactly
//! `j` positive k-th powers. The step from `j` to `j + 1` ORs together copies
//! of the previous bitmap shifted by each power `a^k < limit`.

use crate::bitset::{words_for, BitSet};
use crate::error::{Error, Result};
use crate::powers::PowerTable;
use crate::roots::pow;

pub const DEFAULT_RAM_CAP: u64 = 8 << 30;

/// Resource limits for sieve allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    pub ram_cap_bytes: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            ram_cap_bytes: DEFAULT_RAM_CAP,
        }
    }
}

impl SieveConfig {
    pub fn with_ram_cap(ram_cap_bytes: u64) -> Self {
        SieveConfig { ram_cap_bytes }
    }

    /// Fails when `bitmaps` simultaneous bitmaps of `limit` bits would exceed
    /// 75% of the configured cap.
    pub fn check(&self, limit: u64, bitmaps: u64) -> Result<()> {
        let requested = words_for(limit).saturating_mul(8).saturating_mul(bitmaps);
        let allowed = self.ram_cap_bytes / 4 * 3;
        if requested > allowed {
            return Err(Error::MemoryCap {
                requested,
                allowed,
                cap: self.ram_cap_bytes,
            });
        }
        Ok(())
    }
}

/// Characteristic bitmap of the (j,k)-representable integers in `[0, limit)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSieve {
    k: u32,
    j: u32,
    limit: u64,
    bits: BitSet,
}

impl RepSieve {
    /// Reassembles a sieve from stored parts, checking its invariants.
    pub fn from_parts(k: u32, j: u32, bits: BitSet) -> Result<Self> {
        if k == 0 || j == 0 {
            return Err(Error::InvalidArgument("k and j must be >= 1".into()));
        }
        let limit = bits.len();
        if bits.iter_ones().next().is_some_and(|first| first < j as u64) {
            return Err(Error::InvalidArgument(format!(
                "bit below {j} set in a j = {j} sieve"
            )));
        }
        if (j as u64) < limit && !bits.get(j as u64) {
            return Err(Error::InvalidArgument(format!(
                "bit {j} (j copies of 1) is clear"
            )));
        }
        Ok(RepSieve { k, j, limit, bits })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn into_bits(self) -> BitSet {
        self.bits
    }

    #[inline]
    pub fn is_representable(&self, n: u64) -> bool {
        self.bits.get(n)
    }

    /// Positive integers below `limit` that are not representable, ascending.
    pub fn non_representable(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_zeros().filter(|&n| n > 0)
    }

    /// Shifts `a^k` that can land inside the window.
    fn shifts(&self) -> Vec<u64> {
        shifts_below(self.k, self.limit)
    }

    /// The (j+1)-part sieve: `n` is set iff `n - a^k` is set here for some a.
    pub fn advance(&self) -> RepSieve {
        let bits = self.bits.shifted_union(&self.shifts());
        RepSieve {
            k: self.k,
            j: self.j + 1,
            limit: self.limit,
            bits,
        }
    }
}

fn shifts_below(k: u32, limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    PowerTable::new(k, limit - 1)
        .map(|t| t.powers().to_vec())
        .unwrap_or_default()
}

/// The j = 1 sieve: exactly the positive k-th powers below `limit`.
pub fn sieve_base(k: u32, limit: u64) -> Result<RepSieve> {
    sieve_base_with(k, limit, &SieveConfig::default())
}

pub fn sieve_base_with(k: u32, limit: u64, config: &SieveConfig) -> Result<RepSieve> {
    if k == 0 {
        return Err(Error::InvalidArgument("exponent k must be >= 1".into()));
    }
    if limit < 2 {
        return Err(Error::InvalidArgument("sieve limit must be >= 2".into()));
    }
    // advancing keeps two bitmaps alive
    config.check(limit, 2)?;
    let mut bits = BitSet::new(limit);
    for p in shifts_below(k, limit) {
        bits.set(p);
    }
    Ok(RepSieve { k, j: 1, limit, bits })
}

pub fn advance(prev: &RepSieve) -> RepSieve {
    prev.advance()
}

/// The (j,k) sieve for a single `j`.
pub fn sieve_exact(k: u32, j: u32, limit: u64) -> Result<RepSieve> {
    sieve_exact_with(k, j, limit, &SieveConfig::default())
}

pub fn sieve_exact_with(k: u32, j: u32, limit: u64, config: &SieveConfig) -> Result<RepSieve> {
    if j == 0 {
        return Err(Error::InvalidArgument("part count j must be >= 1".into()));
    }
    let mut s = sieve_base_with(k, limit, config)?;
    while s.j < j {
        s = s.advance();
    }
    Ok(s)
}

/// Successive sieves j = 1, 2, 3, ... for one `(k, limit)`.
pub struct SieveChain {
    next: Option<RepSieve>,
}

impl SieveChain {
    pub fn new(k: u32, limit: u64) -> Result<Self> {
        Self::with_config(k, limit, &SieveConfig::default())
    }

    pub fn with_config(k: u32, limit: u64, config: &SieveConfig) -> Result<Self> {
        Ok(SieveChain {
            next: Some(sieve_base_with(k, limit, config)?),
        })
    }
}

impl Iterator for SieveChain {
    type Item = RepSieve;

    fn next(&mut self) -> Option<RepSieve> {
        let cur = self.next.take()?;
        self.next = Some(cur.advance());
        Some(cur)
    }
}

/// Union of the (j,k) sieves for `1 <= j <= jmax`: sums of at most `jmax`
/// positive k-th powers (equivalently, exactly `jmax` nonnegative ones).
///
/// The returned sieve carries `j = jmax`; its invariants are those of a union,
/// so bits below `jmax` may be set.
pub fn sieve_at_most(k: u32, jmax: u32, limit: u64) -> Result<AtMostSieve> {
    sieve_at_most_with(k, jmax, limit, &SieveConfig::default())
}

pub fn sieve_at_most_with(
    k: u32,
    jmax: u32,
    limit: u64,
    config: &SieveConfig,
) -> Result<AtMostSieve> {
    if jmax == 0 {
        return Err(Error::InvalidArgument("jmax must be >= 1".into()));
    }
    config.check(limit, 3)?;
    let mut union = BitSet::new(limit.max(2));
    for s in SieveChain::with_config(k, limit, config)?.take(jmax as usize) {
        union.union_with(s.bits());
    }
    Ok(AtMostSieve {
        k,
        jmax,
        limit,
        bits: union,
    })
}

/// Integers below `limit` that are sums of between 1 and `jmax` positive k-th powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtMostSieve {
    pub k: u32,
    pub jmax: u32,
    pub limit: u64,
    pub bits: BitSet,
}

impl AtMostSieve {
    pub fn is_representable(&self, n: u64) -> bool {
        self.bits.get(n)
    }

    pub fn non_representable(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_zeros().filter(|&n| n > 0)
    }
}

/// Every `m` with `lower < m < upper` is known to be (j,k)-representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalCertificate {
    pub k: u32,
    pub j: u32,
    pub lower: u64,
    pub upper: u64,
    /// The base `a` of the extension step that produced this certificate.
    pub step: Option<u64>,
}

impl IntervalCertificate {
    pub fn new(k: u32, j: u32, lower: u64, upper: u64) -> Self {
        IntervalCertificate { k, j, lower, upper, step: None }
    }

    /// The widest tail interval the sieve itself proves: from the largest
    /// non-representable value up to the sieve limit.
    pub fn from_sieve(sieve: &RepSieve) -> Self {
        let lower = sieve.non_representable().last().unwrap_or(0);
        IntervalCertificate::new(sieve.k(), sieve.j(), lower, sieve.limit())
    }

    pub fn contains(&self, m: u64) -> bool {
        self.lower < m && m < self.upper
    }
}

/// Extends an interval certificate from `j` to `j + 1` parts using base `a`.
///
/// Requires `a^k - (a-1)^k < upper - lower`; yields `(lower + 1, upper + a^k)`.
pub fn extend_interval(cert: &IntervalCertificate, a: u64) -> Result<IntervalCertificate> {
    if a == 0 {
        return Err(Error::InvalidArgument("extension base a must be >= 1".into()));
    }
    let k = cert.k;
    let ak = pow(a, k)?;
    let gap = ak - pow(a - 1, k)?;
    let width = cert.upper.checked_sub(cert.lower).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "certificate upper {} below lower {}",
            cert.upper, cert.lower
        ))
    })?;
    if gap >= width {
        return Err(Error::Precondition(format!(
            "{a}^{k} - {}^{k} = {gap} is not < N - n = {} - {} = {width}",
            a - 1,
            cert.upper,
            cert.lower
        )));
    }
    let upper = cert
        .upper
        .checked_add(ak)
        .ok_or_else(|| Error::Overflow(format!("{} + {a}^{k}", cert.upper)))?;
    Ok(IntervalCertificate {
        k,
        j: cert.j + 1,
        lower: cert.lower + 1,
        upper,
        step: Some(a),
    })
}

/// Result of applying an n* witness with a "sums of at most b powers" bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApplicationBound {
    /// Every integer strictly greater than this is representable.
    pub threshold: u64,
    /// The part count `b + d` that the threshold applies to.
    pub parts: u32,
}

/// If `nstar` is (j,k)-representable for all `d <= j < b + d` and every
/// `n > n0` is a sum of at most `b` positive k-th powers, every integer above
/// `nstar + n0` is (b+d, k)-representable. The witness itself is the caller's
/// responsibility (see `repfind::verify_nstar`).
pub fn nstar_application_bound(nstar: u64, d: u32, b: u32, n0: u64) -> Result<ApplicationBound> {
    let threshold = nstar
        .checked_add(n0)
        .ok_or_else(|| Error::Overflow(format!("{nstar} + {n0}")))?;
    Ok(ApplicationBound {
        threshold,
        parts: b + d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(s: &RepSieve) -> Vec<u64> {
        s.bits().iter_ones().collect()
    }

    #[test]
    fn base_examples() {
        assert_eq!(ones(&sieve_base(2, 11).unwrap()), vec![1, 4, 9]);
        assert_eq!(ones(&sieve_base(3, 9).unwrap()), vec![1, 8]);
        assert_eq!(ones(&sieve_base(7, 130).unwrap()), vec![1, 128]);
    }

    #[test]
    fn advance_examples() {
        assert_eq!(ones(&sieve_base(2, 11).unwrap().advance()), vec![2, 5, 8, 10]);
        assert_eq!(ones(&sieve_base(3, 20).unwrap().advance()), vec![2, 9, 16]);
        let s4 = sieve_exact(2, 4, 40).unwrap();
        assert_eq!(
            s4.non_representable().collect::<Vec<_>>(),
            vec![1, 2, 3, 5, 6, 8, 9, 11, 14, 17, 24, 29, 32]
        );
    }

    #[test]
    fn at_most_examples() {
        let s = sieve_at_most(3, 7, 500).unwrap();
        assert_eq!(
            s.non_representable().collect::<Vec<_>>(),
            vec![15, 22, 23, 50, 114, 167, 175, 186, 212, 231, 238, 239, 303, 364, 420, 428, 454]
        );
        let s = sieve_at_most(2, 4, 50).unwrap();
        assert_eq!(s.non_representable().count(), 0);
        let s = sieve_at_most(4, 16, 14000).unwrap();
        assert_eq!(s.non_representable().last(), Some(13792));
    }

    #[test]
    fn bad_inputs() {
        assert!(sieve_base(2, 1).is_err());
        assert!(sieve_base(0, 10).is_err());
        assert!(sieve_exact(2, 0, 10).is_err());
        assert!(sieve_at_most(2, 0, 10).is_err());
    }

    #[test]
    fn memory_cap_refuses_large_windows() {
        let cfg = SieveConfig::with_ram_cap(1 << 20);
        let err = sieve_base_with(2, 1 << 30, &cfg).unwrap_err();
        assert!(matches!(err, Error::MemoryCap { .. }));
        assert!(sieve_base_with(2, 1 << 20, &cfg).is_ok());
    }

    #[test]
    fn saturation_when_j_exceeds_limit() {
        let s = sieve_exact(3, 40, 30).unwrap();
        assert_eq!(s.bits().count_ones(), 0);
    }

    #[test]
    fn from_parts_checks_invariants() {
        let s = sieve_exact(2, 3, 100).unwrap();
        let back = RepSieve::from_parts(2, 3, s.bits().clone()).unwrap();
        assert_eq!(back, s);
        let mut bad = s.bits().clone();
        bad.set(1);
        assert!(RepSieve::from_parts(2, 3, bad).is_err());
        let mut bad = s.bits().clone();
        bad.clear(3);
        assert!(RepSieve::from_parts(2, 3, bad).is_err());
    }

    #[test]
    fn extension_examples() {
        let c = IntervalCertificate::new(5, 10, 77529941, 1_000_000_000);
        let c = extend_interval(&c, 117).unwrap();
        assert_eq!((c.j, c.lower, c.upper), (11, 77529942, 22924480357));
        let c = extend_interval(&c, 260).unwrap();
        assert_eq!((c.j, c.lower, c.upper), (12, 77529943, 1211062080357));

        let c = extend_interval(&IntervalCertificate::new(2, 5, 33, 100), 20).unwrap();
        assert_eq!((c.j, c.lower, c.upper), (6, 34, 500));
    }

    #[test]
    fn extension_hypothesis_violation() {
        // 34^2 - 33^2 = 67 is not < 67
        let err = extend_interval(&IntervalCertificate::new(2, 5, 33, 100), 34).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("67")));
    }

    #[test]
    fn application_bounds() {
        assert_eq!(
            nstar_application_bound(100000497376, 3, 17, 87918).unwrap().threshold,
            100000585294
        );
        let b = nstar_application_bound(1072, 2, 9, 0).unwrap();
        assert_eq!((b.threshold, b.parts), (1072, 11));
        let s = sieve_exact(3, 11, 2000).unwrap();
        assert!((1073..2000).all(|n| s.is_representable(n)));

        let b = nstar_application_bound(169, 1, 4, 0).unwrap();
        assert_eq!((b.threshold, b.parts), (169, 5));
        let s = sieve_exact(2, 5, 400).unwrap();
        assert!((170..400).all(|n| s.is_representable(n)));
    }

    #[test]
    fn certificate_from_sieve() {
        let s = sieve_exact(2, 5, 400).unwrap();
        let c = IntervalCertificate::from_sieve(&s);
        assert_eq!((c.lower, c.upper), (33, 400));
    }
}
