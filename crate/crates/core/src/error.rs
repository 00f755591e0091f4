use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("no tabulated constants for k = {0} (table covers 1..=9)")]
    NotFound(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("refusing to allocate {requested} bytes: limit is {allowed} bytes (75% of a {cap} byte cap)")]
    MemoryCap { requested: u64, allowed: u64, cap: u64 },

    #[error("no ({j},{k})-representation of {n}")]
    CertificateFailure { n: u64, j: u32, k: u32 },

    #[error("search budget of {nodes} nodes exhausted while looking for a ({j},{k})-representation of {n}")]
    BudgetExhausted { n: u64, j: u32, k: u32, nodes: u64 },

    #[error("tolerance {tol:e} not reached; best estimate {estimate} (error {error:e})")]
    ToleranceUnachievable { tol: f64, estimate: f64, error: f64 },
}
