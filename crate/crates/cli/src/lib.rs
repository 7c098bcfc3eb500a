//! Command-line front end for `unitri`: argument parsing, the commands and
//! the verification suite, and report output as JSON or markdown.

pub mod args;
pub mod commands;
pub mod fixtures;
pub mod parse;
pub mod report;
pub mod suite;

use args::{Cli, Command, Format, UsageError};
use report::Report;

/// Runs one parsed command line.
pub fn run(cli: &Cli) -> Result<Report, UsageError> {
    let g = &cli.global;
    match &cli.command {
        Command::Roots(c) => commands::cmd_roots(c, g),
        Command::Lsets(a) => commands::cmd_lsets(a, g),
        Command::Decompose(a) => commands::cmd_decompose(a, g),
        Command::Orbit(o) => commands::cmd_orbit(o, g),
        Command::Ideal(c) => commands::cmd_ideal(c, g),
        Command::Hecke(h) => commands::cmd_hecke(h, g),
        Command::Verify(v) => suite::cmd_verify(v, g),
    }
}

/// Runs `cli` on a pool of `--workers` threads and renders the report.
pub fn run_rendered(cli: &Cli) -> Result<(String, i32), UsageError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.global.workers)
        .build()
        .map_err(|e| UsageError(e.to_string()))?;
    let report = pool.install(|| run(cli))?;
    let text = match cli.global.format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n",
        Format::Md => report.to_markdown(),
    };
    Ok((text, report.exit_code()))
}
