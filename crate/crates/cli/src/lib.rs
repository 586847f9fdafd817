//! Command-line front end: expression parsing, subcommands and reports.
pub mod commands;
pub mod expr;
pub mod report;
