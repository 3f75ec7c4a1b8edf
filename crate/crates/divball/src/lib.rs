//! Batch front end for `divball-core`: JSON job configs, CSV and JSON
//! result files, and parallel table and sweep drivers.
//!
//! The `divball` binary reads one [`config::JobConfig`] and writes one
//! output file. Exit code 0 means success, 1 a rejected config (no numeric
//! work was done), 2 a numeric failure. Failures also print a one-line JSON
//! record on standard error.

pub mod config;
pub mod output;
pub mod records;
pub mod run;

pub use config::{ConfigError, JobConfig};
pub use output::{emit_plot_data, format_float, read_plot_data};
pub use run::{run, RunError, RunOptions};
