//! Command-line front end for `halfline-core`: CSV/JSON dataset emission,
//! figure datasets and the oracle cross-check suite.

pub mod cli;
pub mod dataset;
pub mod figures;
pub mod verify;

pub use cli::{execute, render, run, Cli, CliError, Outcome};
pub use dataset::{Cell, Table};
