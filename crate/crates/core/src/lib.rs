//! Sums of positive k-th powers: which integers are not sums of exactly `j`
//! positive k-th powers, when those sets stabilize, and witnesses for the
//! bounds that prove it.
//!
//! The main entry points are the bit-parallel [`sieve`], the B-set machinery in
//! [`bsets`], the explicit representation search in [`repfind`], the n*
//! candidate search in [`nstar`], exact partition counts in [`partitions`] and
//! the density heuristics in [`heur`].

pub mod bitset;
pub mod bsets;
pub mod error;
pub mod heur;
pub mod known;
pub mod nstar;
pub mod partitions;
pub mod powers;
pub mod repfind;
pub mod roots;
pub mod sieve;

pub use bitset::BitSet;
pub use bsets::{BSet, BSetStats, ConsistencyVerdict};
pub use error::{Error, Result};
pub use heur::{HeuristicModel, Method, VolumeEstimate};
pub use known::{known_bounds, KnownBounds};
pub use nstar::{CandidateReport, CandidateStatus};
pub use partitions::PartitionTable;
pub use powers::{build_power_table, PowerTable};
pub use repfind::{NStarCertificate, Representation, SearchOptions, SearchOutcome};
pub use sieve::{IntervalCertificate, RepSieve, SieveConfig};
