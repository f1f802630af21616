//! Experiment driver for `hypcover-core`.
//!
//! Every subcommand writes CSV tables plus a JSON sidecar. Identical
//! arguments give byte-identical CSV; only the sidecar's `duration_ms`
//! varies between runs.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod error;
pub mod output;

pub use cli::run;
pub use error::CliError;
