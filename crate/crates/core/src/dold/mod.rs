//! Dold and sign conditions, fail-factor lower bounds from finite scans, and
//! theoretical upper bounds.
//!
//! A sequence `A` satisfies the Dold condition when `n | S_n` for every `n`,
//! with `S_n = sum_{d|n} μ(n/d) A_d`. Its fail factor is the least `c > 0`
//! such that `c·A` does; the multipliers that work form the positive
//! multiples of the fail factor.

mod bounds;
mod report;
mod scan;

pub use bounds::{
    classify, classify_with, combine, power_bounds, power_fail_bound, splitting_degree,
    substitute_radical, table_bounds, weighted_gcd, BoundKind, ClassificationRow, Evidence,
    SplittingDegree, TableRow, UpperBound, SPLITTING_PRIME_BOUND,
};
pub use report::{
    fail_report, fail_report_view, fail_report_with_known, power_report, AnalysisOptions,
    FailReport, FailValue, PowerReport, PrimeResolution, Verdict,
};
pub use scan::{
    dold_violations, empirical_fail_lower, mobius_sum, prime_power_check, prime_power_failures,
    scan, sign_violations, DoldScan, DoldViolation, PrimePowerFailure,
};

use thiserror::Error;

use crate::factorint::FactorError;
use crate::numth::NumthError;
use crate::polyring::PolyError;
use crate::recurrence::RecurrenceError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DoldError {
    #[error(transparent)]
    Recurrence(#[from] RecurrenceError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Numth(#[from] NumthError),
    #[error("scan horizon must be at least 1")]
    ZeroHorizon,
    #[error("argument must be at least 1")]
    ZeroArgument,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cofactor {s} is divisible by {p}")]
    PrimeDividesCofactor { p: u64, s: u64 },
    #[error("index p^k·s does not fit in 64 bits")]
    IndexOverflow,
    #[error("discriminant is zero")]
    ZeroDiscriminant,
    #[error(
        "upper bound {expression} = {value} is not a multiple of the empirical lower bound {lower}"
    )]
    InconsistentBounds {
        expression: String,
        value: String,
        lower: String,
    },
    #[error("a finite upper bound was supplied for a sequence with infinite fail factor")]
    KnownBoundContradiction,
}

impl DoldError {
    /// True for resource-guard stops.
    pub fn is_guard(&self) -> bool {
        matches!(self, DoldError::Recurrence(e) if e.is_guard())
    }
}

pub type Result<T> = std::result::Result<T, DoldError>;
