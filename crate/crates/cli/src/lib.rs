//! Command-line front end for `bogoliubov-core`: form files, analysis
//! reports, parameter sweeps, propagator traces and the Fock-space check.

pub mod commands;
pub mod error;
pub mod formfile;
pub mod grid;
pub mod output;

pub use commands::{Format, Settings};
pub use error::CliError;
