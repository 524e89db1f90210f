use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPerm(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("word {0} is empty or full; a proper nonempty subset is required")]
    ImproperWord(String),

    #[error("invalid rational: {0}")]
    InvalidRational(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("vector is not in the hyperplane sum(x) = 0 (sum is {0})")]
    NotInHyperplane(String),

    #[error("exhaustion over S({n}) refused: bound is n <= {bound}")]
    TooLarge { n: usize, bound: usize },

    #[error("n = {0} is too small for this operation")]
    TooSmall(usize),

    #[error("the pair ({pi}, {u}) does not define an edge")]
    NotAnEdge { pi: String, u: String },

    #[error("the pair ({pi}, {u}) defines an edge")]
    IsAnEdge { pi: String, u: String },

    #[error("unknown certificate name: {0}")]
    UnknownCertificate(String),

    #[error("malformed lift plan: {0}")]
    MalformedPlan(String),

    #[error("parameter search exhausted after {iterations} steps: {detail}")]
    SearchExhausted { iterations: u32, detail: String },

    #[error("exact linear algebra failed: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;
