use thiserror::Error;

/// Errors produced by the evaluators, solvers and parsers in this crate.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("evaluation at a pole: {0}")]
    Pole(String),

    #[error("series does not converge: {0}")]
    Divergence(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("iteration cap of {0} reached")]
    IterationCap(usize),

    #[error("no rational function of the requested degrees matches the series")]
    InconsistentSystem,

    #[error("alpha coefficient missing for partition {0}")]
    MissingAlpha(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("integer relation excluded: no vector of norm below {bound} exists")]
    Excluded { bound: String },
}

pub type Result<T> = std::result::Result<T, Error>;
