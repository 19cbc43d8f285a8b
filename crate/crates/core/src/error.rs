use thiserror::Error;

use crate::certify::CertReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("graph on {n} vertices exceeds the exact-solver limit of {limit}")]
    SizeLimit { n: usize, limit: usize },

    #[error("edge {{{0}, {1}}} is not present in the host graph")]
    NotSubgraph(usize, usize),

    #[error("exact enumeration of {sets} vertex sets on {n} vertices exceeds the cap")]
    Enumeration { n: usize, sets: u128 },

    #[error("rotation error: {0}")]
    Rotation(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("expander extraction failed after {retries} attempts")]
    Extraction { retries: usize, last: Box<CertReport> },

    #[error("config error at {location}: {msg}")]
    Config { location: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
