use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid design parameters: {0}")]
    InvalidParams(String),

    #[error("not a weighing matrix: {0}")]
    InvalidMatrix(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("malformed difference matrix: row {row} has {found} nonzero entries, expected {expected}")]
    MalformedDifference {
        row: usize,
        found: usize,
        expected: usize,
    },

    #[error("operation requires paired choice sets (m = 2), got m = {0}")]
    NotPaired(usize),

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    #[error("not available: {0}")]
    NotAvailable(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("generator constraint violated: {0}")]
    Generator(String),

    #[error("duplicate profiles within choice sets {sets:?} (1-based)")]
    DuplicateProfiles { sets: Vec<usize> },

    #[error("design is not optimal under the {0} model")]
    NotOptimal(&'static str),

    #[error("design with n = {n} factors exceeds the brute-force limit of {max}")]
    SizeGuard { n: usize, max: usize },
}
