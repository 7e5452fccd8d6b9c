//! Command-line front end for `cellcut-core`: JSON documents in, text or
//! JSON reports out.

pub mod commands;
pub mod document;
pub mod random;
pub mod report;

pub use commands::{run, CliError, Command, Options};
pub use document::ComplexDocument;
pub use report::Report;
