use thiserror::Error;

/// Errors produced by the optimizers, objectives and experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("population is empty")]
    EmptyPopulation,

    /// `iteration` is 0 for the initial population and `t + 1` for iteration `t`.
    #[error("non-finite fitness {value} at iteration {iteration}, agent {agent}")]
    NonFiniteFitness {
        iteration: usize,
        agent: usize,
        value: f64,
    },

    #[error("unknown problem: {0}")]
    UnknownProblem(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
