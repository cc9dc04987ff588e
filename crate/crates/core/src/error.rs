use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("underlying graph is not an extended Dynkin diagram: {0}")]
    NotAffine(String),

    #[error("quiver has an oriented cycle; no admissible sink sequence exists")]
    NoAdmissibleOrder,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex `{0}` is not a sink")]
    NotSink(String),

    #[error("vertex `{0}` is not a source")]
    NotSource(String),

    #[error("field too small for this computation: {0}")]
    NeedsLargerField(String),

    #[error("enumeration of {count} candidates exceeds the cap {cap}")]
    CombinatorialExplosion { count: u128, cap: u128 },

    #[error("Hall polynomial does not interpolate within the degree bound: {0}")]
    DegreeBoundExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
