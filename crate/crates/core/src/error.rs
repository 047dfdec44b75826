use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{phase} failed: {detail}")]
    Phase { phase: &'static str, detail: String },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn phase(phase: &'static str, detail: impl Into<String>) -> Self {
        Error::Phase { phase, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
