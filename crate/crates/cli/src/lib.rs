//! Command-line front end for the `deltabound` engines: JSON configs in,
//! CSV or JSON tables of `E/m` out.

pub mod audit;
pub mod config;
pub mod error;
pub mod figures;
pub mod output;
pub mod run;

pub use config::{parse_config, Format, Method, RunConfig, SweepSpec};
pub use error::CliError;
