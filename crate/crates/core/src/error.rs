use thiserror::Error;

use crate::mcg::Classification;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("expected a pseudo-Anosov class, got {class}: {matrix}")]
    NotPseudoAnosov {
        class: Classification,
        matrix: String,
    },

    #[error("classes are not independent: {0} and {1} share their axis")]
    NotIndependent(String, String),

    /// Two classes with exactly one common boundary fixed point. Should never
    /// happen for integer matrices; surfaced instead of being classified.
    #[error("fixed point sets of {0} and {1} meet in exactly one point")]
    FixedPointDichotomy(String, String),

    #[error("constant derivation failed: {0}")]
    ConstantDerivation(String),

    #[error("search horizon {horizon} exceeded: {detail}")]
    HorizonExceeded { horizon: f64, detail: String },

    #[error("no marking of length at most F={bound}: {detail}")]
    FViolation { bound: f64, detail: String },

    #[error("certificate invalid: check {check} failed at {witness}")]
    CertificateInvalid { check: String, witness: String },

    #[error("refused: {0}")]
    Refused(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag used by the command line front end.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid_input",
            Error::Degenerate(_) => "degenerate",
            Error::NotPseudoAnosov { .. } => "not_pseudo_anosov",
            Error::NotIndependent(..) => "not_independent",
            Error::FixedPointDichotomy(..) => "fixed_point_dichotomy",
            Error::ConstantDerivation(_) => "constant_derivation",
            Error::HorizonExceeded { .. } => "horizon_exceeded",
            Error::FViolation { .. } => "f_violation",
            Error::CertificateInvalid { .. } => "certificate_invalid",
            Error::Refused(_) => "refused",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
