use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidCartanType(String),

    #[error("{0} is not a positive root of {1}")]
    NotARoot(String, String),

    #[error("simple index {index} out of range for rank {rank}")]
    BadSimpleIndex { index: usize, rank: usize },

    #[error("elements belong to different root systems ({0} vs {1})")]
    MixedRootSystems(String, String),

    #[error("group of order {required} exceeds the enumeration bound {bound}")]
    BoundExceeded { required: u64, bound: u64 },

    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),

    #[error("cannot parse element {0:?}: {1}")]
    Parse(String, String),

    #[error("element {0} is not a minimal coset representative for levi {1}")]
    NotMinimal(String, String),

    #[error("invalid parabolic: {0}")]
    InvalidParabolic(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
