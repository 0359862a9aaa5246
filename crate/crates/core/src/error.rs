use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported exponent {0}: Laurent terms below u^-1 are not representable")]
    UnsupportedExponent(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("sign undecidable after subdivision depth {0}; raise the enclosure precision")]
    Undecidable(u32),

    #[error("denominator changes sign on the momentum interval (pole near [{lo}, {hi}])")]
    PoleInDomain { lo: String, hi: String },

    #[error("scenario is outside the solvable range: {0}")]
    NotSolvable(String),

    #[error("quadrature did not reach tolerance on [{a}, {b}] (estimated error {err:e})")]
    Quadrature { a: f64, b: f64, err: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
