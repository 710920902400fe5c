//! Command-line front end for `pslab-core`: a thread-pool executor, an
//! on-disk sieve cache, CSV and manifest output, and the `pslab` binary's
//! subcommands.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod error;
pub mod exec;
pub mod output;
pub mod params;

pub use error::CliError;
pub use exec::Pool;
