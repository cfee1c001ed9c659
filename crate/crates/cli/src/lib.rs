//! CLI front end: CSV ingestion, run configuration, report emission, and
//! the subcommand surface over the analytics library.

pub mod commands;
pub mod config;
pub mod error;
pub mod ingest;
pub mod report;

pub use commands::{execute, run, Cli, Command};
pub use config::{OutputFormat, RunConfig};
pub use error::{CliError, CliResult};
pub use ingest::{ingest_csv, ObservationRow, ObservationTable};
