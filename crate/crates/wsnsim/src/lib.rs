//! Host-side companion of `wsnsim-core`: configuration files, CSV traces and
//! summaries, and the multi-seed experiment runner behind the `wsnsim`
//! binary.

pub mod config;
pub mod csv;
mod error;
pub mod experiment;

pub use config::{load_config, Settings};
pub use error::Error;
pub use experiment::{run_experiment, ExperimentOutput, ExperimentSpec};
pub use wsnsim_core as core;
