//! Command-line front end for `ecbasis`: JSON configs in, CSV/SVG/OBJ files out.

pub mod bench;
pub mod commands;
pub mod config;
mod error;
pub mod stats;
pub mod writers;

pub use commands::{run, Command, RunConfig, RunReport};
pub use error::CliError;
pub use stats::{confidence_interval, student_t_quantile, ConfidenceInterval};
