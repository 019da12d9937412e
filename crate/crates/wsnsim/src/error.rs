use std::io;
use std::path::PathBuf;

/// Errors surfaced by configuration loading, output and experiments.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("failed to write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown configuration key `{key}`")]
    UnknownKey { key: String },

    #[error("invalid value `{value}` for `{key}`: expected {expected}")]
    InvalidValue {
        key: String,
        value: String,
        expected: &'static str,
    },

    #[error(transparent)]
    Simulation(#[from] wsnsim_core::Error),

    #[error("trace has no rounds")]
    EmptyTrace,

    #[error("invalid experiment: {0}")]
    Experiment(String),
}
