//! Density heuristics for sums of k-th powers.
//!
//! `V(j,k)` is the volume of `{x in [0,1]^j : x_1^k + ... + x_j^k <= 1}`. The
//! number of j-part representations below `n` is modelled as
//! `n^{j/k} V(j,k) / j!`, and its derivative gives a density.

use std::collections::BTreeMap;
use std::collections::BinaryHeap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
pub const DEFAULT_SAMPLES: u64 = 10_000_000;
pub const DEFAULT_SEED: u64 = 0x5741_5249_4e47;
const MC_SHARDS: u64 = 64;
const MAX_INTERVALS: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Quadrature,
    MonteCarlo { samples: u64, seed: u64 },
}

impl Method {
    pub fn monte_carlo() -> Self {
        Method::MonteCarlo {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub j: u32,
    pub k: u32,
    pub value: f64,
    /// Quadrature: accumulated error estimate. Monte Carlo: standard error.
    pub error: f64,
    pub method: Method,
}

pub fn volume(j: u32, k: u32, method: Method, tol: f64) -> Result<VolumeEstimate> {
    if j == 0 || k == 0 {
        return Err(Error::InvalidArgument("need j >= 1 and k >= 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let (value, error) = match method {
        Method::Quadrature => volume_quadrature(j, k, tol)?,
        Method::MonteCarlo { samples, seed } => volume_monte_carlo(j, k, samples, seed)?,
    };
    if error > tol {
        return Err(Error::ToleranceUnachievable {
            tol,
            estimate: value,
            error,
        });
    }
    Ok(VolumeEstimate {
        j,
        k,
        value,
        error,
        method,
    })
}

/// `V(i) = V(i-1) * int_0^1 (1 - x^k)^{(i-1)/k} dx`, starting from `V(1) = 1`.
fn volume_quadrature(j: u32, k: u32, tol: f64) -> Result<(f64, f64)> {
    let mut v = 1.0;
    let mut err = 0.0;
    let step_tol = tol / j as f64;
    for i in 2..=j {
        let p = (i - 1) as f64 / k as f64;
        let kf = k as f64;
        let (integral, e) = adaptive_simpson(|x| (1.0 - x.powf(kf)).max(0.0).powf(p), 0.0, 1.0, step_tol)
            .map_err(|(estimate, error)| Error::ToleranceUnachievable {
                tol,
                estimate: v * estimate,
                error,
            })?;
        err = err * integral + v * e;
        v *= integral;
    }
    Ok((v, err))
}

struct Panel {
    err: f64,
    a: f64,
    b: f64,
    fa: f64,
    fl: f64,
    fm: f64,
    fr: f64,
    fb: f64,
    whole: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive Simpson: always split the panel with the largest error
/// estimate. Returns `(value, error)`, or the best `(value, error)` on failure.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> std::result::Result<(f64, f64), (f64, f64)> {
    let simpson = |fa: f64, fm: f64, fb: f64, h: f64| h / 6.0 * (fa + 4.0 * fm + fb);
    let make = |a: f64, b: f64, fa: f64, fm: f64, fb: f64| {
        let m = 0.5 * (a + b);
        let (fl, fr) = (f(0.5 * (a + m)), f(0.5 * (m + b)));
        let whole = simpson(fa, fm, fb, b - a);
        let halves = simpson(fa, fl, fm, m - a) + simpson(fm, fr, fb, b - m);
        Panel {
            err: (halves - whole).abs() / 15.0,
            a,
            b,
            fa,
            fl,
            fm,
            fr,
            fb,
            whole: halves + (halves - whole) / 15.0,
        }
    };
    let mut heap = BinaryHeap::new();
    heap.push(make(a, b, f(a), f(0.5 * (a + b)), f(b)));
    loop {
        let total_err: f64 = heap.iter().map(|p| p.err).sum();
        let total: f64 = heap.iter().map(|p| p.whole).sum();
        if total_err <= tol {
            return Ok((total, total_err));
        }
        if heap.len() >= MAX_INTERVALS {
            return Err((total, total_err));
        }
        // split the worst panel; 64 at a time keeps the sums above cheap
        for _ in 0..64 {
            let Some(p) = heap.pop() else { break };
            let m = 0.5 * (p.a + p.b);
            heap.push(make(p.a, m, p.fa, p.fl, p.fm));
            heap.push(make(m, p.b, p.fm, p.fr, p.fb));
        }
    }
}

fn volume_monte_carlo(j: u32, k: u32, samples: u64, seed: u64) -> Result<(f64, f64)> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let kf = k as i32;
    let hits: Vec<u64> = (0..MC_SHARDS)
        .into_par_iter()
        .map(|shard| {
            let n = samples / MC_SHARDS + u64::from(shard < samples % MC_SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let mut hits = 0u64;
            for _ in 0..n {
                let mut s = 0.0;
                for _ in 0..j {
                    let x: f64 = rng.random();
                    s += x.powi(kf);
                    if s > 1.0 {
                        break;
                    }
                }
                hits += u64::from(s <= 1.0);
            }
            hits
        })
        .collect();
    let hits: u64 = hits.iter().sum();
    let p = hits as f64 / samples as f64;
    let se = (p * (1.0 - p) / samples as f64).sqrt();
    Ok((p, se))
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicModel {
    pub k: u32,
    pub volumes: BTreeMap<u32, VolumeEstimate>,
}

impl HeuristicModel {
    pub fn new(k: u32, js: &[u32], method: Method, tol: f64) -> Result<Self> {
        let mut volumes = BTreeMap::new();
        for &j in js {
            volumes.insert(j, volume(j, k, method, tol)?);
        }
        Ok(Self { k, volumes })
    }

    pub fn quadrature(k: u32, js: &[u32]) -> Result<Self> {
        Self::new(k, js, Method::Quadrature, DEFAULT_TOLERANCE)
    }

    pub fn volume(&self, j: u32) -> Result<f64> {
        self.volumes
            .get(&j)
            .map(|v| v.value)
            .ok_or_else(|| Error::Precondition(format!("model for k = {} has no V({j})", self.k)))
    }

    /// Approximate count of j-part representations below `n`: `n^{j/k} V / j!`.
    pub fn count(&self, n: f64, j: u32) -> Result<f64> {
        Ok(n.powf(j as f64 / self.k as f64) * self.volume(j)? / factorial(j))
    }

    /// `V(j,k) / (k (j-1)!)`, the coefficient of `n^{j/k - 1}` in the density.
    pub fn density_constant(&self, j: u32) -> Result<f64> {
        Ok(self.volume(j)? / (self.k as f64 * factorial(j - 1)))
    }

    /// Probability that `n` is a sum of `j` positive k-th powers.
    pub fn density(&self, n: f64, j: u32) -> Result<f64> {
        if n.is_nan() || n < 1.0 {
            return Err(Error::InvalidArgument(format!("need n >= 1, got {n}")));
        }
        Ok(self.density_constant(j)? * n.powf(j as f64 / self.k as f64 - 1.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// E < -1: finitely many coincidences expected.
    FiniteExpected,
    /// E = -1: the expected count grows like log.
    Logarithmic,
    /// E > -1.
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exponent {
    pub value: Ratio<i64>,
    pub verdict: Verdict,
}

/// `E = sum j_i / k_i - m` for `m` pairs `(j_i, k_i)`.
#[allow(non_snake_case)]
pub fn exponent_E(pairs: &[(u32, u32)]) -> Result<Exponent> {
    if pairs.is_empty() {
        return Err(Error::InvalidArgument("need at least one (j, k) pair".into()));
    }
    let mut e = Ratio::from_integer(0i64);
    for &(j, k) in pairs {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be >= 1".into()));
        }
        e += Ratio::new(j as i64, k as i64) - 1;
    }
    let minus_one = Ratio::from_integer(-1);
    let verdict = match e.cmp(&minus_one) {
        std::cmp::Ordering::Less => Verdict::FiniteExpected,
        std::cmp::Ordering::Equal => Verdict::Logarithmic,
        std::cmp::Ordering::Greater => Verdict::Infinite,
    };
    Ok(Exponent { value: e, verdict })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coincidences {
    /// `C b^{E+1} / |E+1|`
    Finite { value: f64, constant: f64, exponent: Exponent },
    LogDivergent { constant: f64 },
    Divergent { constant: f64, exponent: Exponent },
}

impl Coincidences {
    pub fn value(&self) -> Option<f64> {
        match self {
            Coincidences::Finite { value, .. } => Some(*value),
            _ => None,
        }
    }
}

/// Expected number of integers above `b` that are simultaneously sums of
/// `j` k-th powers for every `j` in `pairs`.
pub fn expected_coincidences(b: f64, pairs: &[(u32, u32)], model: &HeuristicModel) -> Result<Coincidences> {
    if b.is_nan() || b < 1.0 {
        return Err(Error::InvalidArgument(format!("need b >= 1, got {b}")));
    }
    let exponent = exponent_E(pairs)?;
    let mut constant = 1.0;
    for &(j, k) in pairs {
        if k != model.k {
            return Err(Error::InvalidArgument(format!(
                "pair ({j}, {k}) does not match model k = {}",
                model.k
            )));
        }
        constant *= model.density_constant(j)?;
    }
    Ok(match exponent.verdict {
        Verdict::FiniteExpected => {
            let e1 = *exponent.value.numer() as f64 / *exponent.value.denom() as f64 + 1.0;
            Coincidences::Finite {
                value: constant * b.powf(e1) / e1.abs(),
                constant,
                exponent,
            }
        }
        Verdict::Logarithmic => Coincidences::LogDivergent { constant },
        Verdict::Infinite => Coincidences::Divergent { constant, exponent },
    })
}
