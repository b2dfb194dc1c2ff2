//! Command-line front end for `wittlab-core`: JSON formats, a persistent
//! cache for universal Witt polynomials, and the `wittlab` subcommands.

pub mod cache;
pub mod commands;
pub mod complex_json;
pub mod error;
pub mod json;
pub mod table;

pub use error::{CliError, Result};
