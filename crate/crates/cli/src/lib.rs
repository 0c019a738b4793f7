//! Command-line front end: design files, CSV export, overview tables and
//! the `plan`, `construct`, `verify`, `extend`, `tables` and `export` commands.

pub mod commands;
pub mod error;
pub mod export;
pub mod format;
pub mod tables;

pub use commands::{run, Cli};
pub use error::CliError;
pub use format::{DesignFile, FormatError};
