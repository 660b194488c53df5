use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A family hypothesis is violated; the message names it.
    #[error("{0}")]
    Hypothesis(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("not a cocycle: relation {relation} violated, residue {residue}")]
    NotACocycle { relation: String, residue: String },
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("computation failed: {0}")]
    Computation(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
