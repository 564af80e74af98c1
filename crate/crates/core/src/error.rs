use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    /// A scenario violates one of the model's parameter invariants. The
    /// `invariant` string names the violated condition, e.g. `price > cap_cost`.
    #[error("scenario invariant violated: {invariant} ({detail})")]
    InvalidParams {
        invariant: &'static str,
        detail: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("policy length {got} does not match horizon {expected}")]
    PolicyLength { expected: usize, got: usize },

    #[error("horizon {horizon} exceeds the enumeration cap {cap}")]
    HorizonTooLarge { horizon: usize, cap: usize },

    #[error("branch-and-bound node cap of {cap} exceeded")]
    NodeCapExceeded { cap: u64 },

    #[error("{0}")]
    CapacityMode(&'static str),

    #[error("lemma inapplicable: {0}")]
    LemmaInapplicable(String),

    #[error("sampling gave up after {0} rejected draws")]
    SamplingExhausted(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
