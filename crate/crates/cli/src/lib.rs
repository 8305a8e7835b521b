//! Library half of the `tdn` command-line tool.
//!
//! [`run`] parses an argument vector, dispatches to the engine and renders
//! a report. It never touches the process environment except for reading
//! `TDN_MAX_CELLS`, so tests can drive it in-process.

mod args;
mod commands;
mod report;

use std::ffi::OsString;
use std::fs;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use tdn_core::{Caps, Error};

pub use args::{Cli, Command, Format};
pub use report::{Report, Table, Verdict};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const CAP_EXCEEDED: i32 = 2;
    pub const VERIFICATION_FAILED: i32 = 3;
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => exit::CAP_EXCEEDED,
        Error::NormalizationFailure(_) => exit::VERIFICATION_FAILED,
        _ => exit::USAGE,
    }
}

fn caps_for(cli: &Cli) -> Caps {
    let mut caps = Caps::from_env();
    if let Some(cells) = cli.global.max_cells {
        caps.max_families = cells;
        caps.max_monomials = cells;
    }
    if let Some(dn) = cli.global.max_dn {
        caps.max_dn = dn;
    }
    caps
}

/// Builds the report for a parsed command line.
pub fn execute(cli: &Cli) -> Result<Report, Error> {
    let caps = caps_for(cli);
    let start = Instant::now();
    let out = commands::dispatch(&cli.command, &caps)?;
    let elapsed = start.elapsed().as_millis() as u64;
    Ok(Report {
        command: cli.command.name().to_string(),
        params: out.params,
        result: out.result,
        verdicts: out.verdicts,
        table: out.table,
        timing_ms: (!cli.global.deterministic).then_some(elapsed),
    })
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    Outcome {
                        code: exit::SUCCESS,
                        stdout: e.to_string(),
                        stderr: String::new(),
                    }
                }
                _ => Outcome::error(exit::USAGE, e.render().to_string()),
            };
        }
    };
    if cli.global.format == Format::Csv
        && !matches!(cli.command, Command::Betti(_) | Command::Pairing(_))
    {
        return Outcome::error(
            exit::USAGE,
            format!(
                "error: csv output is only available for betti and pairing, not {}\n",
                cli.command.name()
            ),
        );
    }
    let report = match execute(&cli) {
        Ok(report) => report,
        Err(e) => return Outcome::error(error_code(&e), format!("error: {e}\n")),
    };
    let rendered = match cli.global.format {
        Format::Json => report.render_json(),
        Format::Text => report.render_text(),
        Format::Csv => report.render_csv().expect("table commands produce a table"),
    };
    let code = if report.all_pass() {
        exit::SUCCESS
    } else {
        exit::VERIFICATION_FAILED
    };
    match &cli.global.output {
        Some(path) => match fs::write(path, &rendered) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::error(
                exit::USAGE,
                format!("error: cannot write {}: {e}\n", path.display()),
            ),
        },
        None => Outcome {
            code,
            stdout: rendered,
            stderr: String::new(),
        },
    }
}
