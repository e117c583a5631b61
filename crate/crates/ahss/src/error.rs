use thiserror::Error;

#[derive(Debug, Error)]
pub enum AhssError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("invalid chain complex: {0}")]
    InvalidComplex(String),
    #[error("invalid value: {0}")]
    Invalid(String),
    #[error("unknown group name: {0}")]
    UnknownGroup(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}
