//! Searching for n* witnesses: integers that are (j,k)-representable for a
//! run of consecutive `j` starting at a small `d`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::repfind::{
    find_representation, verify_nstar, NStarCertificate, Representation, SearchOptions,
    SearchOutcome,
};
use crate::sieve::{SieveChain, SieveConfig};

pub const DEFAULT_STAGES: u32 = 4;

/// Integers in the open window `(lo, hi)` representable with each of
/// `d, d+1, ..., d+stages-1` parts, ascending.
pub fn search_candidates(k: u32, d: u32, lo: u64, hi: u64, stages: u32) -> Result<Vec<u64>> {
    search_candidates_with(k, d, lo, hi, stages, &SieveConfig::default())
}

pub fn search_candidates_with(
    k: u32,
    d: u32,
    lo: u64,
    hi: u64,
    stages: u32,
    config: &SieveConfig,
) -> Result<Vec<u64>> {
    if lo >= hi {
        return Err(Error::InvalidArgument(format!("empty window ({lo}, {hi})")));
    }
    if d == 0 || stages == 0 {
        return Err(Error::InvalidArgument("need d >= 1 and at least one stage".into()));
    }
    config.check(hi, 3)?;
    let mut acc = None;
    for s in SieveChain::with_config(k, hi, config)?
        .skip(d as usize - 1)
        .take(stages as usize)
    {
        match acc.as_mut() {
            None => acc = Some(s.into_bits()),
            Some(bits) => bits.intersect_with(s.bits()),
        }
    }
    let bits = acc.expect("at least one stage");
    Ok(bits.iter_ones().filter(|&n| n > lo).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateStatus {
    /// Representations found for every `j` in `d..=jmax`.
    Verified(NStarCertificate),
    /// Exhaustive search proved there is no representation with `j` parts.
    Failed { j: u32 },
    /// The search budget ran out at `j`.
    Inconclusive { j: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateReport {
    pub n: u64,
    /// Sieve stages passed before explicit verification.
    pub stages: u32,
    /// Largest `j` with a representation in hand (`d - 1` when none).
    pub verified_through: u32,
    pub status: CandidateStatus,
}

impl CandidateReport {
    pub fn is_verified(&self) -> bool {
        matches!(self.status, CandidateStatus::Verified(_))
    }
}

/// Sieve for candidates, then try to certify each one for `d..=jmax`.
pub fn search_and_verify(
    k: u32,
    d: u32,
    lo: u64,
    hi: u64,
    jmax: u32,
    opts: &SearchOptions,
) -> Result<Vec<CandidateReport>> {
    let stages = DEFAULT_STAGES.min(jmax.saturating_sub(d) + 1);
    let candidates = search_candidates(k, d, lo, hi, stages)?;
    let mut reports = Vec::with_capacity(candidates.len());
    for n in candidates {
        let mut reps = Vec::new();
        let mut status = None;
        for j in d..=jmax {
            match find_representation(n, j, k, opts)? {
                SearchOutcome::Found(r) => reps.push(r),
                SearchOutcome::NotRepresentable => {
                    status = Some(CandidateStatus::Failed { j });
                    break;
                }
                SearchOutcome::BudgetExhausted { .. } => {
                    status = Some(CandidateStatus::Inconclusive { j });
                    break;
                }
            }
        }
        let verified_through = d - 1 + reps.len() as u32;
        let status = match status {
            Some(s) => s,
            None => CandidateStatus::Verified(NStarCertificate {
                nstar: n,
                k,
                d,
                jmax,
                representations: reps,
            }),
        };
        reports.push(CandidateReport {
            n,
            stages,
            verified_through,
            status,
        });
    }
    Ok(reports)
}

/// Doubles `nu`, which has both a δ-part and a (δ+1)-part representation,
/// into a witness `2nu` with representations for `2δ, 2δ+1, 2δ+2` parts.
pub fn double_candidate(
    nu: u64,
    delta: u32,
    k: u32,
    opts: &SearchOptions,
) -> Result<NStarCertificate> {
    if delta == 0 {
        return Err(Error::InvalidArgument("delta must be >= 1".into()));
    }
    let find = |j: u32| -> Result<Representation> {
        match find_representation(nu, j, k, opts)? {
            SearchOutcome::Found(r) => Ok(r),
            SearchOutcome::NotRepresentable => Err(Error::CertificateFailure { n: nu, j, k }),
            SearchOutcome::BudgetExhausted { nodes } => {
                Err(Error::BudgetExhausted { n: nu, j, k, nodes })
            }
        }
    };
    let small = find(delta)?;
    let large = find(delta + 1)?;
    let nstar = nu
        .checked_mul(2)
        .ok_or_else(|| Error::Overflow(format!("2 * {nu}")))?;
    let cert = NStarCertificate {
        nstar,
        k,
        d: 2 * delta,
        jmax: 2 * delta + 2,
        representations: vec![small.join(&small)?, small.join(&large)?, large.join(&large)?],
    };
    cert.validate()?;
    Ok(cert)
}

/// Re-verifies a doubled certificate from scratch with the general search.
pub fn reverify(cert: &NStarCertificate, opts: &SearchOptions) -> Result<NStarCertificate> {
    verify_nstar(cert.nstar, cert.k, cert.d, cert.jmax, opts)
}

/// Smallest `d` the density heuristic expects to admit a witness, with the
/// exponent `E(d)` for the integers on either side of it.
#[derive(Debug, Clone, PartialEq)]
pub struct MinDEstimate {
    pub k: u32,
    /// `k + (1 - sqrt(1 + 8k)) / 2`
    pub d: f64,
    pub neighbours: Vec<(u32, Ratio<i64>)>,
}

/// `E(d) = -(k-d)(k-d+1) / (2k)`: the exponent for requiring representations
/// with `d, d+1, ..., k-1` parts simultaneously.
pub fn exponent_for_d(k: u32, d: u32) -> Result<Ratio<i64>> {
    if k == 0 || d > k {
        return Err(Error::InvalidArgument(format!("need d <= k, got d = {d}, k = {k}")));
    }
    let x = (k - d) as i64;
    Ok(Ratio::new(-x * (x + 1), 2 * k as i64))
}

pub fn min_d_heuristic(k: u32) -> Result<MinDEstimate> {
    if k < 2 {
        return Err(Error::InvalidArgument("need k >= 2".into()));
    }
    let d = k as f64 + (1.0 - (1.0 + 8.0 * k as f64).sqrt()) / 2.0;
    let lo = d.floor().max(1.0) as u32;
    let hi = d.ceil().max(1.0) as u32;
    let mut neighbours = vec![(lo, exponent_for_d(k, lo)?)];
    if hi != lo {
        neighbours.push((hi, exponent_for_d(k, hi)?));
    }
    Ok(MinDEstimate { k, d, neighbours })
}
