//! Explicit search for a multiset of `j` positive k-th powers summing to `n`.
//!
//! Bases are assigned largest first in non-increasing order, so each multiset
//! is visited once. The largest base of a j-part representation of `n` lies
//! between `(n/j)^(1/k)` and `n^(1/k)`. An optional [`PruneTable`] of small-j
//! sieves cuts a branch as soon as the remainder is known to be unreachable.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::roots::{checked_pow, iroot, iroot_ceil};
use crate::sieve::{RepSieve, SieveChain, SieveConfig};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_PRUNE_DEPTH: u32 = 4;

/// Bases of a (j,k)-representation, non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    k: u32,
    parts: Vec<u64>,
}

impl Representation {
    pub fn new(k: u32, mut parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("representation parts must be >= 1".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Representation { k, parts })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `Σ parts^k` with overflow checking.
    pub fn sum(&self) -> Result<u64> {
        self.parts.iter().try_fold(0u64, |acc, &p| {
            checked_pow(p, self.k)
                .and_then(|v| acc.checked_add(v))
                .ok_or_else(|| Error::Overflow("representation sum exceeds u64".into()))
        })
    }

    /// Concatenation of two representations with the same exponent.
    pub fn join(&self, other: &Representation) -> Result<Representation> {
        if self.k != other.k {
            return Err(Error::InvalidArgument("cannot join different exponents".into()));
        }
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Representation::new(self.k, parts)
    }
}

impl std::fmt::Display for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.parts.iter().map(|p| format!("{p}^{}", self.k)).collect();
        f.write_str(&terms.join(" + "))
    }
}

/// Sieves for `j = 1..=depth` used to reject remainders early.
#[derive(Debug, Clone)]
pub struct PruneTable {
    k: u32,
    limit: u64,
    sieves: Vec<RepSieve>,
}

impl PruneTable {
    pub fn build(k: u32, depth: u32, limit: u64) -> Result<Self> {
        Self::build_with(k, depth, limit, &SieveConfig::default())
    }

    pub fn build_with(k: u32, depth: u32, limit: u64, config: &SieveConfig) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidArgument("prune depth must be >= 1".into()));
        }
        config.check(limit, depth as u64 + 1)?;
        let sieves = SieveChain::with_config(k, limit, config)?
            .take(depth as usize)
            .collect();
        Ok(PruneTable { k, limit, sieves })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn depth(&self) -> u32 {
        self.sieves.len() as u32
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `Some(representable)` when the table covers `(remaining, parts)`.
    #[inline]
    fn lookup(&self, remaining: u64, parts: u32) -> Option<bool> {
        if parts == 0 || parts > self.depth() || remaining >= self.limit {
            return None;
        }
        Some(self.sieves[parts as usize - 1].is_representable(remaining))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions<'a> {
    pub prune: Option<&'a PruneTable>,
    pub node_budget: u64,
    /// Search the choices of largest base in parallel. The result is the same
    /// representation the sequential search returns.
    pub parallel: bool,
}

impl Default for SearchOptions<'_> {
    fn default() -> Self {
        SearchOptions {
            prune: None,
            node_budget: DEFAULT_NODE_BUDGET,
            parallel: false,
        }
    }
}

impl<'a> SearchOptions<'a> {
    pub fn with_prune(prune: &'a PruneTable) -> Self {
        SearchOptions {
            prune: Some(prune),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Representation),
    /// Exhaustive search found nothing.
    NotRepresentable,
    /// The node budget ran out first; nothing is known.
    BudgetExhausted { nodes: u64 },
}

impl SearchOutcome {
    pub fn found(self) -> Option<Representation> {
        match self {
            SearchOutcome::Found(r) => Some(r),
            _ => None,
        }
    }
}

enum Step {
    Found,
    Fail,
    Exhausted,
}

struct Searcher<'a> {
    k: u32,
    prune: Option<&'a PruneTable>,
    budget: u64,
    nodes: &'a AtomicU64,
}

impl Searcher<'_> {
    /// Range of admissible largest bases, `lo..=hi`.
    fn base_range(&self, remaining: u64, parts: u32, max_base: u64) -> Option<(u64, u64)> {
        let spare = remaining.checked_sub(parts as u64 - 1)?;
        let hi = iroot(spare, self.k).min(max_base);
        let lo = iroot_ceil(remaining.div_ceil(parts as u64), self.k).max(1);
        (lo <= hi).then_some((lo, hi))
    }

    fn search(&self, remaining: u64, parts: u32, max_base: u64, out: &mut Vec<u64>) -> Step {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Step::Exhausted;
        }
        if parts == 0 {
            return if remaining == 0 { Step::Found } else { Step::Fail };
        }
        if remaining < parts as u64 {
            return Step::Fail;
        }
        if let Some(p) = self.prune {
            if p.lookup(remaining, parts) == Some(false) {
                return Step::Fail;
            }
        }
        if parts == 1 {
            let r = iroot(remaining, self.k);
            return if r <= max_base && r.pow(self.k) == remaining {
                out.push(r);
                Step::Found
            } else {
                Step::Fail
            };
        }
        let Some((lo, hi)) = self.base_range(remaining, parts, max_base) else {
            return Step::Fail;
        };
        for b in (lo..=hi).rev() {
            out.push(b);
            match self.search(remaining - b.pow(self.k), parts - 1, b, out) {
                Step::Found => return Step::Found,
                Step::Exhausted => return Step::Exhausted,
                Step::Fail => {
                    out.pop();
                }
            }
        }
        Step::Fail
    }
}

/// Finds the first (j,k)-representation of `n` in largest-first order.
pub fn find_representation(n: u64, j: u32, k: u32, opts: &SearchOptions) -> Result<SearchOutcome> {
    if j == 0 || k == 0 {
        return Err(Error::InvalidArgument("need j >= 1 and k >= 1".into()));
    }
    if let Some(p) = opts.prune {
        if p.k() != k {
            return Err(Error::InvalidArgument(format!(
                "prune table is for k = {}, search is for k = {k}",
                p.k()
            )));
        }
    }
    let nodes = AtomicU64::new(0);
    let searcher = Searcher {
        k,
        prune: opts.prune,
        budget: opts.node_budget,
        nodes: &nodes,
    };
    let step_to_outcome = |step: Step, parts: Vec<u64>| -> Result<SearchOutcome> {
        Ok(match step {
            Step::Found => SearchOutcome::Found(Representation::new(k, parts)?),
            Step::Fail => SearchOutcome::NotRepresentable,
            Step::Exhausted => SearchOutcome::BudgetExhausted {
                nodes: nodes.load(Ordering::Relaxed),
            },
        })
    };

    if !opts.parallel || j == 1 {
        let mut parts = Vec::with_capacity(j as usize);
        let step = searcher.search(n, j, u64::MAX, &mut parts);
        return step_to_outcome(step, parts);
    }

    let Some((lo, hi)) = searcher.base_range(n, j, u64::MAX) else {
        return Ok(SearchOutcome::NotRepresentable);
    };
    if let Some(p) = opts.prune {
        if p.lookup(n, j) == Some(false) {
            return Ok(SearchOutcome::NotRepresentable);
        }
    }
    let bases: Vec<u64> = (lo..=hi).rev().collect();
    // first branch in canonical order that either succeeds or runs out of budget
    let hit = bases.par_iter().find_map_first(|&b| {
        let mut parts = vec![b];
        match searcher.search(n - b.pow(k), j - 1, b, &mut parts) {
            Step::Found => Some((Step::Found, parts)),
            Step::Exhausted => Some((Step::Exhausted, parts)),
            Step::Fail => None,
        }
    });
    match hit {
        Some((step, parts)) => step_to_outcome(step, parts),
        None => Ok(SearchOutcome::NotRepresentable),
    }
}

/// Representations of one integer for every part count `d..=jmax`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NStarCertificate {
    pub nstar: u64,
    pub k: u32,
    pub d: u32,
    pub jmax: u32,
    pub representations: Vec<Representation>,
}

impl NStarCertificate {
    /// Re-checks every row: right part count, right exponent, exact sum.
    pub fn validate(&self) -> Result<()> {
        if self.representations.len() as u64 != (self.jmax - self.d + 1) as u64 {
            return Err(Error::InvalidArgument("certificate row count mismatch".into()));
        }
        for (j, r) in (self.d..=self.jmax).zip(&self.representations) {
            if r.len() != j as usize || r.k() != self.k || r.sum()? != self.nstar {
                return Err(Error::CertificateFailure {
                    n: self.nstar,
                    j,
                    k: self.k,
                });
            }
        }
        Ok(())
    }
}

/// Builds a certificate that `nstar` is (j,k)-representable for `d <= j <= jmax`.
pub fn verify_nstar(
    nstar: u64,
    k: u32,
    d: u32,
    jmax: u32,
    opts: &SearchOptions,
) -> Result<NStarCertificate> {
    if d == 0 || jmax < d {
        return Err(Error::InvalidArgument(format!("need 1 <= d <= jmax, got d = {d}, jmax = {jmax}")));
    }
    if nstar < jmax as u64 {
        return Err(Error::InvalidArgument(format!("n* = {nstar} is below jmax = {jmax}")));
    }
    let mut representations = Vec::with_capacity((jmax - d + 1) as usize);
    for j in d..=jmax {
        match find_representation(nstar, j, k, opts)? {
            SearchOutcome::Found(r) => representations.push(r),
            SearchOutcome::NotRepresentable => {
                return Err(Error::CertificateFailure { n: nstar, j, k })
            }
            SearchOutcome::BudgetExhausted { nodes } => {
                return Err(Error::BudgetExhausted { n: nstar, j, k, nodes })
            }
        }
    }
    Ok(NStarCertificate {
        nstar,
        k,
        d,
        jmax,
        representations,
    })
}
