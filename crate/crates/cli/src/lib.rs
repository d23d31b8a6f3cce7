//! Command-line front end: input documents, command dispatch and
//! deterministic result records.

mod commands;
pub mod document;
mod output;

pub use commands::{run, CliError, Outcome};
pub use document::{Diagnostic, DiagnosticKind, InputDocument, Location, ObjectKind};
pub use output::Format;
