use thiserror::Error;

use crate::entropy::EntropyReport;
use crate::mahler::ComplexRootSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("polynomial has a zero constant term; factor out X^k first")]
    ZeroConstantTerm,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial is not primitive (content {0})")]
    NotPrimitive(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial must have degree at least {0}")]
    DegreeTooSmall(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entry {0} is not an integer")]
    NonIntegerEntry(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Root disks could not be separated at the precision cap.
    #[error("root isolation did not converge at {bits} bits")]
    RootCertification {
        bits: u32,
        partial: Box<ComplexRootSet>,
    },

    #[error("entropy could not be certified: {reason}")]
    EntropyCertification {
        reason: String,
        partial: Box<EntropyReport>,
    },

    #[error("trajectory coordinate overflowed 64-bit storage at level {0}")]
    Overflow(usize),

    #[error("need at least {needed} levels, run has {got}")]
    TooFewLevels { needed: usize, got: usize },

    #[error("trajectory invariant violated: {0}")]
    InvariantViolation(String),
}
