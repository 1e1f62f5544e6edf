//! Text format, built-in corpus and command dispatch for the `semilab` binary.

pub mod commands;
pub mod corpus;
pub mod format;

pub use commands::{execute, Cli, Command, Outcome};
