//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HallError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field size {q} exceeds the configured bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("duplicate exceptional point {0}")]
    DuplicateExceptional(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("duplicate abscissa q = {0}")]
    DuplicateAbscissa(i64),
    #[error("interpolation needs at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("representations live over different fields or quivers")]
    Mismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("enumeration of {size} elements exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("non-integral value where an integer was required: {0}")]
    NonIntegral(String),
    #[error("catalogue incomplete: {0}")]
    CatalogueIncomplete(String),
    #[error("no catalogue for this quiver: {0}")]
    CatalogueUnavailable(String),
    #[error("interpolation did not stabilize: {0}")]
    Unstable(String),
    #[error("automorphism polynomial is not monic: {0}")]
    NonMonic(String),
    #[error("weights {0} are not domestic")]
    NonDomestic(String),
    #[error("element {0} is not in the positive cone")]
    NotPositive(String),
    #[error("expected a torsion class: {0}")]
    NonTorsion(String),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("check failed: {0}")]
    Disagreement(String),
}

pub type Result<T> = std::result::Result<T, HallError>;
