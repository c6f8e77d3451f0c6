//! Command-line front end: configuration, the factorization cache, report
//! emission and the commands themselves.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod emit;

pub use args::Cli;
pub use commands::{run, Status};
