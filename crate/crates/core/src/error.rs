use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The p-adic valuation of zero is infinite and never represented.
    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("root finder did not converge (best residual {best_residual:e})")]
    NoConvergence { best_residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    /// A verified property did not hold. Maps to exit code 2 on the command line.
    #[error("assertion failed: {0}")]
    Assertion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
