//! Command-line front end: argument parsing, the commands, and the JSON and
//! CSV renderings of their results.

pub mod args;
pub mod commands;
pub mod record;

pub use args::Cli;
pub use commands::{run, Failure, Outcome};
pub use record::RunRecord;
