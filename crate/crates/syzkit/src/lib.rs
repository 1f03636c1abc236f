//! Std companion to `syzkit-core`: JSON file formats, verification reports
//! and the `syzkit` command line.

pub mod cli;
pub mod commands;
pub mod io;
pub mod report;

pub use commands::RunConfig;
pub use report::{Check, Report};
