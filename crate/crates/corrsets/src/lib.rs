//! File formats, wall-clock budgets and the command-line front end for
//! `corrsets-core`.

pub mod budget;
pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod report;
pub mod tictactoe;

pub use error::CliError;
