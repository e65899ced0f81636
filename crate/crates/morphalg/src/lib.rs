//! File formats, reports and the command-line surface over
//! [`morphalg_core`].

pub mod commands;
pub mod literal;
pub mod report;
pub mod spec;

pub use commands::{run, Cli, Command, Outcome};
pub use report::Report;
