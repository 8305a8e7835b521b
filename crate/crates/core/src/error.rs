use thiserror::Error;

use crate::setcore::Subset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sets {0} and {1} are not nested")]
    NotNested(Subset, Subset),
    #[error("set {0} has fewer than two elements")]
    BadCardinality(Subset),
    #[error("{0} is not a member of the family")]
    NotMember(Subset),
    #[error("invalid subset: {0}")]
    BadSubset(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("{what} exceeds the configured cap of {limit}")]
    CapExceeded { what: &'static str, limit: u64 },
    #[error("degree {degree} is outside the valid range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("degree map normalization failed: {0}")]
    NormalizationFailure(String),
    #[error("negative exponent {exponent} on {set}")]
    NegativeExponent { set: Subset, exponent: i64 },
    #[error("monomial has degree {actual} but the top degree is {expected} ({detail})")]
    DegreeMismatch {
        actual: i64,
        expected: usize,
        detail: String,
    },
    #[error("space {0} has no cellular decomposition")]
    NotCellular(String),
    #[error("rank polynomial division failed: {0}")]
    DivisionFailure(String),
    #[error("pairing value {0} is not an integer")]
    NonIntegral(String),
}
