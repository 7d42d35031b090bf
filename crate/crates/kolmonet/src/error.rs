use std::path::PathBuf;

use kolmonet_core::builder::BuildError;
use thiserror::Error;

use crate::io::FormatError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },
    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("network was built for problem {expected}, not {found}")]
    ProblemMismatch { expected: String, found: String },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
    #[error("writing csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Every error is an input or IO failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, Error>;
