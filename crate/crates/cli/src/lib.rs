//! Command implementations behind the `packing-cell` binary.

pub mod cells;
pub mod error;
pub mod format;
pub mod off;
pub mod report;
pub mod verify;

pub use error::{CliError, CliResult};
