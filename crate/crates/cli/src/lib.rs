//! File formats and subcommands behind the `fourierfit` binary.

pub mod commands;
pub mod error;
pub mod formats;

pub use commands::{cmd_fit, cmd_synth, FitArgs, FitReport, SynthArgs, SynthReport};
pub use error::CliError;
