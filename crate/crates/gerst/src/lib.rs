//! Manifest formats, example lookup and the commands behind the `gerst` binary.

pub mod commands;
pub mod error;
pub mod examples;
pub mod manifest;
pub mod render;
pub mod schema;

pub use commands::{run, Command, Input, MuSource, Outcome, RunConfig, Status};
pub use error::{CliError, Violation};
pub use examples::Examples;
