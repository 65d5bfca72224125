use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid arena: {0}")]
    InvalidArena(String),
    #[error("unknown move `{0}`")]
    UnknownMove(String),
    #[error("illegal play: {0}")]
    IllegalPlay(String),
    #[error("arena mismatch: {0}")]
    ArenaMismatch(String),
    #[error("ill-formed O-view set: {0}")]
    IllFormedSet(String),
    #[error("strategy gave an illegal response: {0}")]
    IllegalResponse(String),
    #[error("invalid bounds: {0}")]
    InvalidBounds(String),
    #[error("malformed JSON document: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Pcf(#[from] crate::pcf::PcfError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
