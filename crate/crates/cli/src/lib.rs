//! Command-line front end, file formats and parallel drivers for
//! [`quasispin_core`].

pub mod cli;
pub mod config;
pub mod format;
pub mod par;
pub mod plot;

pub use cli::{run, CliError};
