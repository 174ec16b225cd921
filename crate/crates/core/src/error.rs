//! Error type shared by every module of the crate.

use thiserror::Error;

/// Coarse classification of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input (bad JSON, unparsable polynomial, wrong lengths).
    Schema,
    /// A mathematical precondition of an operation is violated.
    Precondition,
    /// An internal invariant failed; indicates a bug.
    Internal,
}

/// Errors produced by the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The discriminant of the defining polynomial vanishes.
    #[error("zero discriminant")]
    ZeroDiscriminant,
    /// Characteristic two is not supported anywhere in the crate.
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    /// A modulus that should be an odd prime is not.
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    /// The defining polynomial has the wrong shape (even degree, non-monic, ...).
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    /// Euclidean division by a polynomial that is zero or not monic.
    #[error("division by a non-monic or zero polynomial")]
    NonMonicDivisor,
    /// A Mumford triple violating `f - R^2 = U V` or its degree constraints.
    #[error("invalid Mumford triple: {0}")]
    InvalidMumford(String),
    /// A genus or degree restriction of an operation is violated.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Trace descent from `F_{p^d}` to `F_p` needs `p` not dividing `d`.
    #[error("trace descent unavailable: p = {p} divides d = {d}; choose another curve or field")]
    TraceDescentUnavailable {
        /// Characteristic.
        p: u64,
        /// Extension degree.
        d: usize,
    },
    /// A brute-force computation would exceed its budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// An iterative numerical method did not converge.
    #[error("root finding did not converge (best residual {residual:e})")]
    NoConvergence {
        /// Largest residual |f(z)| at the last iterate.
        residual: f64,
    },
    /// Sampling did not produce enough independent evaluations.
    #[error("sample deficiency: {0}; use a larger field")]
    SampleDeficiency(String),
    /// The reduction height is only defined when U and f are coprime.
    #[error("reduction height undefined for non-coprime U")]
    ReductionHeightUndefined,
    /// Malformed external input.
    #[error("schema error: {0}")]
    Schema(String),
    /// An internal consistency check failed.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Classifies the error for exit-code selection.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Schema(_) => ErrorKind::Schema,
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
