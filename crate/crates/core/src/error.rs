use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("the permutation pair does not act transitively")]
    NotTransitive,
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("degree {degree} exceeds the exhaustive enumeration cutoff {cutoff}")]
    AboveCutoff { degree: usize, cutoff: usize },
    #[error("{0}")]
    Domain(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
