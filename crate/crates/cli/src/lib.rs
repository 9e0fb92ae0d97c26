//! Library side of the `crw` command: configuration documents, output
//! formatting and the four subcommands.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use config::{load_config, parse_config, to_json, ConfigDocument};
pub use error::CliError;
