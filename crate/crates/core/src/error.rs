use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation of 1..={degree}: {images:?}")]
    InvalidPermutation { degree: usize, images: Vec<usize> },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("permutation {sigma:?} is not a shuffle of composition {parts:?}")]
    NotAShuffle { parts: Vec<usize>, sigma: Vec<usize> },

    #[error("subdivision arity must be at least 1")]
    ZeroArity,

    #[error("invalid word {0:?}: expected letters a-z (generators) or A-Z (inverses)")]
    InvalidWord(String),

    #[error("word uses generator {generator} but the wedge has rank {rank}")]
    GeneratorOutOfRange { generator: usize, rank: usize },

    #[error("expected a non-empty positive word, got {0:?}")]
    NotPositive(String),

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("boundary matrices do not compose to zero at degree {0}")]
    NotAComplex(usize),

    #[error("chain is not a relative cycle in degree {0}")]
    NotACycle(usize),

    #[error("boundary matrix for degree {0} is not available")]
    MissingDegree(usize),

    #[error("point is outside the standard simplex: {0}")]
    PointOutsideSimplex(String),

    #[error("invalid map specification: {0}")]
    InvalidMap(String),

    #[error("malformed complex: {0}")]
    MalformedComplex(String),
}

pub type Result<T> = std::result::Result<T, Error>;
