//! Sets of non-representable integers and their stabilization.
//!
//! `B_j^k` is the set of positive integers that are not sums of exactly `j`
//! positive k-th powers. Shifting it down by `j` gives a set that shrinks as
//! `j` grows and eventually freezes; the frozen set is `B^k`, and whatever a
//! given `j` has beyond it is the tail `B̄_j^k`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::roots::{iroot, iroot_u128};
use crate::sieve::{RepSieve, SieveChain, SieveConfig};

/// A sorted set of positive integers below `limit`.
///
/// `j == 0` marks a stabilized `B^k`. `complete` is only set when a
/// stabilization verdict backs the set; otherwise it is the empirical
/// complement of a sieve below `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BSet {
    pub k: u32,
    pub j: u32,
    pub limit: u64,
    pub elements: Vec<u64>,
    pub complete: bool,
}

impl BSet {
    pub fn new(k: u32, j: u32, limit: u64, mut elements: Vec<u64>, complete: bool) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first() == Some(&0) {
            return Err(Error::InvalidArgument("B-sets hold positive integers".into()));
        }
        if elements.last().is_some_and(|&m| m >= limit) {
            return Err(Error::InvalidArgument(format!(
                "element {} not below limit {limit}",
                elements.last().unwrap()
            )));
        }
        Ok(BSet { k, j, limit, elements, complete })
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// `{n - j : n in B_j, n > j}`, the set that converges to `B^k`.
    pub fn shifted(&self) -> Vec<u64> {
        let j = self.j as u64;
        self.elements.iter().filter(|&&n| n > j).map(|&n| n - j).collect()
    }
}

/// Complement of the sieve's set bits on `(0, limit)`.
pub fn extract_bset(sieve: &RepSieve) -> BSet {
    BSet {
        k: sieve.k(),
        j: sieve.j(),
        limit: sieve.limit(),
        elements: sieve.non_representable().collect(),
        complete: false,
    }
}

/// The tail `B̄_j^k = {n - j : n > j, n in B_j^k} \ B^k`.
///
/// The result is valid below `bset_j.limit - j`.
pub fn reduce(bset_j: &BSet, base: &BSet) -> Result<BSet> {
    if bset_j.j == 0 {
        return Err(Error::InvalidArgument("reduce needs a B_j with j >= 1".into()));
    }
    if bset_j.k != base.k {
        return Err(Error::InvalidArgument(format!(
            "k mismatch: B_j has k = {}, base has k = {}",
            bset_j.k, base.k
        )));
    }
    let window = bset_j.limit.saturating_sub(bset_j.j as u64);
    if base.limit < window && !base.complete {
        return Err(Error::InvalidArgument(format!(
            "base known only below {} but B_j covers shifts below {window}",
            base.limit
        )));
    }
    let elements = bset_j
        .shifted()
        .into_iter()
        .filter(|&n| !base.contains(n))
        .collect();
    Ok(BSet {
        k: bset_j.k,
        j: bset_j.j,
        limit: window,
        elements,
        complete: bset_j.complete && base.complete,
    })
}

/// Outcome of the two-condition stabilization test on `(B_j, B_{j+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConsistencyVerdict {
    pub k: u32,
    pub j: u32,
    /// `max(B_j)`.
    pub m: u64,
    /// `B_{j+1} = {1} ∪ {n + 1 : n in B_j}` inside the common window.
    pub condition1: bool,
    /// `lhs_floor == rhs_floor`.
    pub condition2: bool,
    /// `⌊((m - j)(1 + 1/(2^k - 1)))^(1/k)⌋`
    pub lhs_floor: u64,
    /// `⌊m^(1/k)⌋`
    pub rhs_floor: u64,
    pub stabilized: bool,
}

/// Both floors of the second stabilization condition, computed exactly.
///
/// `(m - j) * 2^k / (2^k - 1)` is a rational `q`; for integer `r`,
/// `r^k <= q` iff `r^k <= ⌊q⌋`, so the k-th root of `⌊q⌋` is the answer.
pub fn floor_identity(m: u64, j: u32, k: u32) -> Result<(u64, u64)> {
    if k == 0 || k >= 127 {
        return Err(Error::InvalidArgument(format!("k = {k} out of range")));
    }
    let two_k = 1u128 << k;
    let num = (m.saturating_sub(j as u64) as u128)
        .checked_mul(two_k)
        .ok_or_else(|| Error::Overflow(format!("({m} - {j}) * 2^{k}")))?;
    let q = num / (two_k - 1);
    Ok((iroot_u128(q, k) as u64, iroot(m, k)))
}

/// Tests whether `B_j` already determines `B^k`.
///
/// Requires consecutive part counts and the same `k`. Returns
/// [`Error::Inconclusive`] when `max(B_j)` sits within `2^k` of the common
/// sieve limit, because the complement there cannot be trusted to be final.
pub fn check_consistency(bset_j: &BSet, bset_j1: &BSet) -> Result<ConsistencyVerdict> {
    let (k, j) = (bset_j.k, bset_j.j);
    if bset_j1.k != k || bset_j1.j != j + 1 || j == 0 {
        return Err(Error::InvalidArgument(format!(
            "need B_j and B_(j+1) for one k; got (j={}, k={}) and (j={}, k={})",
            j, k, bset_j1.j, bset_j1.k
        )));
    }
    let window = bset_j.limit.min(bset_j1.limit);
    let m = bset_j
        .max()
        .ok_or_else(|| Error::Inconclusive(format!("B_{j} is empty below {window}")))?;
    let margin = 1u64.checked_shl(k).unwrap_or(u64::MAX);
    if m.saturating_add(1).saturating_add(margin) >= window {
        return Err(Error::Inconclusive(format!(
            "max(B_{j}^{k}) = {m} is within 2^{k} of the sieve limit {window}"
        )));
    }

    let expected: BTreeSet<u64> = std::iter::once(1)
        .chain(bset_j.elements.iter().map(|&n| n + 1))
        .filter(|&n| n < window)
        .collect();
    let actual: BTreeSet<u64> = bset_j1
        .elements
        .iter()
        .copied()
        .filter(|&n| n < window)
        .collect();
    let condition1 = expected == actual;

    let (lhs_floor, rhs_floor) = floor_identity(m, j, k)?;
    let condition2 = lhs_floor == rhs_floor;
    Ok(ConsistencyVerdict {
        k,
        j,
        m,
        condition1,
        condition2,
        lhs_floor,
        rhs_floor,
        stabilized: condition1 && condition2,
    })
}

/// `{n - (j+1) : n in B_{j+1}} ⊆ {n - j : n in B_j}` inside the common window.
pub fn check_chain_inclusion(bset_j: &BSet, bset_j1: &BSet) -> Result<bool> {
    if bset_j1.k != bset_j.k || bset_j1.j != bset_j.j + 1 {
        return Err(Error::InvalidArgument(
            "chain inclusion compares consecutive j for one k".into(),
        ));
    }
    let window = (bset_j.limit.saturating_sub(bset_j.j as u64))
        .min(bset_j1.limit.saturating_sub(bset_j1.j as u64));
    let lower: BTreeSet<u64> = bset_j.shifted().into_iter().collect();
    Ok(bset_j1
        .shifted()
        .into_iter()
        .filter(|&n| n < window)
        .all(|n| lower.contains(&n)))
}

/// `⌈a / (2^k - 1)⌉`: once `j` reaches this, the tails are empty.
pub fn stabilization_bound(a_jk: u64, k: u32) -> Result<u64> {
    if a_jk == 0 || k == 0 || k >= 64 {
        return Err(Error::InvalidArgument("need a >= 1 and 1 <= k < 64".into()));
    }
    Ok(a_jk.div_ceil((1u64 << k) - 1))
}

fn strip_fours(mut n: u64) -> u64 {
    while n > 0 && n.is_multiple_of(4) {
        n /= 4;
    }
    n
}

const B2: [u64; 7] = [1, 2, 4, 5, 7, 10, 13];

/// True iff `n` is not a sum of exactly four positive squares.
///
/// Exceptions are 1, 2, 3, `4 + β` for `β ∈ B² ∪ {25, 37}`, and the three
/// infinite families `2·4^α`, `6·4^α`, `14·4^α`.
pub fn classify_four_squares(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    if n <= 3 {
        return true;
    }
    if n >= 5 {
        let beta = n - 4;
        if B2.contains(&beta) || beta == 25 || beta == 37 {
            return true;
        }
    }
    matches!(strip_fours(n), 2 | 6 | 14)
}

/// The conjectured complete exceptional set for three positive squares.
pub const THREE_SQUARES_T: [u64; 10] = [1, 2, 5, 10, 13, 25, 37, 58, 85, 130];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeSquares {
    /// `n = 4^α (8m + 7)`: not a sum of three squares at all.
    Obstruction8m7,
    /// `n = 4^α t` with `t ∈ T`: a sum of three squares only if zeros are allowed.
    InTFamily,
    Representable,
}

pub fn classify_three_squares(n: u64) -> ThreeSquares {
    let t = strip_fours(n);
    if t % 8 == 7 {
        ThreeSquares::Obstruction8m7
    } else if THREE_SQUARES_T.contains(&t) {
        ThreeSquares::InTFamily
    } else {
        ThreeSquares::Representable
    }
}

/// `n ≡ 4, 5 (mod 9)` rules out three cubes.
pub fn three_cubes_obstruction(n: u64) -> bool {
    matches!(n % 9, 4 | 5)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Lower bound `p^(p-1) (p-1)/2` on `|B^(p-1)|` for an odd prime `p`.
pub fn fermat_lower_bound(p: u64) -> Result<u128> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    let exp = u32::try_from(p - 1).map_err(|_| Error::Overflow(format!("{p}^{}", p - 1)))?;
    (p as u128)
        .checked_pow(exp)
        .and_then(|v| v.checked_mul((p as u128 - 1) / 2))
        .ok_or_else(|| Error::Overflow(format!("{p}^{} (p-1)/2 exceeds u128", p - 1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BSetStats {
    pub k: u32,
    /// `a_k = max(B^k)`
    pub a: u64,
    /// `b_k = |B^k|`
    pub b: u64,
}

/// Stats of a stabilized set plus the finite-range conjecture predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BSetReport {
    pub stats: BSetStats,
    /// `a = 2b - 1`
    pub sizemax: bool,
    /// `n ∈ B ⇔ a - n ∉ B` for all `0 < n < a`.
    pub reverse: bool,
    /// `a` and `b` both odd.
    pub odd: bool,
    /// `sizemax` and `reverse` are only expected to hold when this is set.
    pub k_is_power_of_two: bool,
}

pub fn bset_stats(base: &BSet) -> Result<BSetReport> {
    let a = base
        .max()
        .ok_or_else(|| Error::InvalidArgument("stats of an empty set".into()))?;
    let b = base.len() as u64;
    let reverse = (1..a).all(|n| base.contains(n) != base.contains(a - n));
    Ok(BSetReport {
        stats: BSetStats { k: base.k, a, b },
        sizemax: a + 1 == 2 * b,
        reverse,
        odd: a % 2 == 1 && b % 2 == 1,
        k_is_power_of_two: base.k.is_power_of_two(),
    })
}

/// A stabilized `B^k` together with the verdict that justified it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilized {
    pub j: u32,
    pub verdict: ConsistencyVerdict,
    pub base: BSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    pub k: u32,
    pub limit: u64,
    /// Last `j` examined.
    pub last_j: u32,
    /// Most recent conclusive verdict, stabilized or not.
    pub last_verdict: Option<ConsistencyVerdict>,
    pub result: Option<Stabilized>,
}

/// Advances `j = 1, 2, ...` up to `jmax` until the stabilization test passes.
pub fn stabilize(k: u32, limit: u64, jmax: u32) -> Result<Stabilization> {
    stabilize_with(k, limit, jmax, &SieveConfig::default())
}

pub fn stabilize_with(k: u32, limit: u64, jmax: u32, config: &SieveConfig) -> Result<Stabilization> {
    let margin = 1u64.checked_shl(k).unwrap_or(u64::MAX);
    let mut chain = SieveChain::with_config(k, limit, config)?;
    let mut prev = chain.next().expect("chain is infinite");
    let mut out = Stabilization {
        k,
        limit,
        last_j: 0,
        last_verdict: None,
        result: None,
    };
    while prev.j() <= jmax {
        let next = chain.next().expect("chain is infinite");
        out.last_j = prev.j();
        let m = prev.non_representable().last().unwrap_or(0);
        if m.saturating_add(1).saturating_add(margin) < limit {
            let bj = extract_bset(&prev);
            let bj1 = extract_bset(&next);
            match check_consistency(&bj, &bj1) {
                Ok(v) => {
                    out.last_verdict = Some(v);
                    if v.stabilized {
                        let j = bj.j;
                        let base = BSet {
                            k,
                            j: 0,
                            limit: limit - j as u64,
                            elements: bj.shifted(),
                            complete: true,
                        };
                        out.result = Some(Stabilized { j, verdict: v, base });
                        return Ok(out);
                    }
                }
                Err(Error::Inconclusive(_)) => {}
                Err(e) => return Err(e),
            }
        }
        prev = next;
    }
    Ok(out)
}

/// `B̄_j^k` for each requested `j`, against a known `B^k`.
pub fn tails(base: &BSet, limit: u64, js: &[u32]) -> Result<Vec<BSet>> {
    if js.contains(&0) {
        return Err(Error::InvalidArgument("tails need j >= 1".into()));
    }
    let jmax = js.iter().copied().max().unwrap_or(0);
    let mut out = Vec::with_capacity(js.len());
    let mut wanted: Vec<u32> = js.to_vec();
    wanted.sort_unstable();
    let mut found = std::collections::BTreeMap::new();
    for s in SieveChain::new(base.k, limit)?.take(jmax as usize) {
        if wanted.binary_search(&s.j()).is_ok() {
            found.insert(s.j(), reduce(&extract_bset(&s), base)?);
        }
    }
    for j in js {
        out.push(found[j].clone());
    }
    Ok(out)
}
