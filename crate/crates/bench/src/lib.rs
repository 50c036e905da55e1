//! Experiment driver behind the `weno-bench` binary.
//!
//! Configurations come from TOML files (see [`config::RunConfig`]) with
//! command-line flags layered on top. The [`commands`] write plain files:
//! full-precision CSV, legacy VTK and JSON summaries.

pub mod commands;
pub mod config;
mod error;
pub mod output;

pub use commands::{compare, converge, run, CompareReport, ConvergenceRow, RunReport, RunSummary};
pub use config::{Overrides, RunConfig, Scheme};
pub use error::BenchError;
