//! Command-line driver for `liegrowth`: thin subcommands over the library
//! operations and an end-to-end pipeline that writes CSV tables, a JSON
//! summary and SVG plots.

pub mod commands;
pub mod config;
pub mod error;
pub mod grid;
pub mod pipeline;
pub mod plot;
pub mod table;

pub use config::PipelineConfig;
pub use error::{CliError, CliResult};
pub use pipeline::{run_pipeline, PipelineOutcome};
