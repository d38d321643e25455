//! Library backing the `credal-decide` binary: scenario parsing, built-in
//! scenarios, command implementations, and report rendering.

pub mod builtins;
pub mod commands;
pub mod error;
pub mod report;
pub mod scenario;

pub use error::CliError;
