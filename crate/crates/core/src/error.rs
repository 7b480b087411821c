use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("malformed file {path}: {detail}")]
    MalformedFile { path: PathBuf, detail: String },

    #[error("search space of 2^{n_vars} exceeds the enumeration cap of 2^{cap}")]
    CapExceeded { n_vars: usize, cap: usize },

    #[error("point {index} lies below the reference point in objective {objective}")]
    PointBelowReference { index: usize, objective: usize },

    #[error("invalid variable ordering: {0}")]
    InvalidOrdering(String),

    #[error("structure/data arity mismatch: {0}")]
    ArityMismatch(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("expected runtime is censored for {instance_id}/{algorithm}: no successful run out of {runs}")]
    Censored {
        instance_id: String,
        algorithm: String,
        runs: usize,
    },

    #[error("rank-deficient design matrix: {0}")]
    RankDeficient(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("corrupted experiment state at {path}: {detail}")]
    CorruptedState { path: PathBuf, detail: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
