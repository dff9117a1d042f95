//! Command-line surface: instance specs, signal file formats, report
//! emission, and seeded instance generation. All mathematics lives in
//! the library crates; commands only load inputs, delegate, and print.

pub mod commands;
pub mod error;
pub mod instances;
pub mod io;
pub mod jsonfmt;
pub mod spec;

pub use commands::{CommandOutput, Overrides, RandomKind};
pub use error::{CliError, Result};
