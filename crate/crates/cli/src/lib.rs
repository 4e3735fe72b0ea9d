//! Batch front end over the quantum-wire library: config parsing,
//! command orchestration and CSV emission.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use commands::{run, Command};
pub use config::{RunConfig, VolumeNorm};
pub use error::CliError;
pub use table::{emit_csv, format_sig, Cell, EmitStatus, RunMetadata, Table};
