//! Library half of the `qmk` binary: argument types, file formats and commands.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod error;
pub mod io;

pub use args::Cli;
pub use error::CliError;

use args::Command;
use io::Output;

/// Run one invocation, write its output, and return any tolerance violations.
pub fn run(cli: &Cli) -> Result<Vec<String>, CliError> {
    let out: Output = match &cli.command {
        Command::Moments(a) => commands::moments::run(a)?,
        Command::Finite(a) => commands::finite::run(a)?,
        Command::Converge(a) => commands::converge::run(a, cli.seed)?,
        Command::Transform(a) => commands::transform::run(a, cli.grid)?,
        Command::Gallery(a) => commands::gallery::run(a, cli.grid)?,
        Command::Selftest(a) => commands::selftest::run(a, cli.seed)?,
    };
    io::write_output(&out, cli.format, cli.out.as_deref())?;
    Ok(out.violations)
}
