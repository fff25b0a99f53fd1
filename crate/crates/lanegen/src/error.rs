//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path}: {detail}")]
    Parse { path: String, detail: String },

    #[error("schema mismatch in {path} line {line}: {detail}")]
    SchemaMismatch {
        path: String,
        line: usize,
        detail: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown lanelet id {0}")]
    UnknownLanelet(u64),

    #[error("path enumeration exceeded the configured cap of {cap} paths")]
    PathCapExceeded { cap: usize },

    #[error("guideline has a single point; cannot interpolate a direction")]
    GuidelineTooShort,

    #[error("trajectory length mismatch: expected {expected} points, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("cost matrix contains a non-finite entry at ({row}, {col})")]
    NonFiniteCost { row: usize, col: usize },

    #[error("prediction set is empty")]
    EmptyPredictions,

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("lane graph has no lanelets")]
    EmptyGraph,

    #[error(
        "map unusable: {rejections} of {attempts} consecutive start draws rejected \
         while generating sample {sample_idx}"
    )]
    MapUnusable {
        sample_idx: u64,
        attempts: u64,
        rejections: u64,
    },

    #[error("no prediction record for sample idx {0}")]
    MissingPrediction(u64),

    #[error("requested k={k} but only {available} predictions are stored")]
    NotEnoughPredictions { k: usize, available: usize },

    #[error("past trajectory needs at least 2 points, got {0}")]
    PastTooShort(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
