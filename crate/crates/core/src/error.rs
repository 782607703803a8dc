use thiserror::Error;

use crate::scalar::RingSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid modulus {0}: need m >= 2")]
    InvalidModulus(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("surface signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("constant term is not 1")]
    NotUnitNormalized,
    #[error("unsupported surface: {0}")]
    UnsupportedSignature(String),
    #[error("maps are not mutually inverse on generator {0}")]
    NotInverse(String),
    #[error("boundary word not fixed: image is `{0}`")]
    BoundaryNotFixed(String),
    #[error("homology action does not preserve the intersection form")]
    NotSymplectic,
    #[error("empty curve list")]
    EmptyCurveList,
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
