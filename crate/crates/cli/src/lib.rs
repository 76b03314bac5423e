//! Command-line front end for `spinlab`.
//!
//! [`run`] parses arguments and executes one command without touching the
//! process; the binary only prints the [`CommandResult`] and exits with its
//! code. Payloads go to the output file when one is given and to stdout
//! otherwise; the one-line summary then goes to stdout or stderr
//! respectively, so stdout is always machine-readable.

mod commands;
mod io;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::CliError;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code for I/O failures.
pub const EXIT_IO: i32 = 1;
/// Exit code for invalid flags, values or input files.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit code when a demanded certification fails.
pub const EXIT_CERTIFICATION: i32 = 3;

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandResult {
    fn ok(stdout: String, stderr: String) -> Self {
        Self {
            exit_code: EXIT_OK,
            stdout,
            stderr,
        }
    }

    fn failure(code: i32, message: String) -> Self {
        Self {
            exit_code: code,
            stdout: String::new(),
            stderr: message,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "spinlab", version, about = "Anticoherent spin subspaces from polyhedral invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// dihedral, tetrahedral, octahedral or icosahedral
    #[arg(long)]
    pub family: String,
    /// Parameter of the dihedral family.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct and certify the invariant subspace at one spin.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        /// Spin as "6" or "13/2".
        #[arg(long)]
        spin: String,
        /// Where to write the report JSON.
        #[arg(long = "out")]
        out_path: Option<PathBuf>,
        /// Relative singular-value cutoff for the rank.
        #[arg(long, env = "SPINLAB_TOL")]
        tol: Option<f64>,
    },
    /// Certify a state or subspace file.
    Check {
        /// State, subspace or build report JSON.
        path: PathBuf,
        /// Highest order tested; defaults to 2s.
        #[arg(long)]
        t_max: Option<usize>,
        #[arg(long, env = "SPINLAB_TOL")]
        tol: Option<f64>,
        /// Exit with code 3 unless this order is certified.
        #[arg(long)]
        require_order: Option<usize>,
    },
    /// Construct at every spin in a range and tabulate dimensions.
    Scan {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        spin_min: String,
        #[arg(long)]
        spin_max: String,
        /// Where to write the CSV table.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Convert between a state and its Majorana points.
    Majorana {
        /// State JSON to convert into points.
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        state: Option<PathBuf>,
        /// Points (JSON or CSV) to convert into a state.
        #[arg(long)]
        points: Option<PathBuf>,
        /// Expected spin when lifting points.
        #[arg(long, requires = "points")]
        spin: Option<String>,
        /// Output file; `.csv` selects CSV, anything else JSON.
        #[arg(long = "out")]
        out_path: Option<PathBuf>,
    },
    /// Sample the joint numerical range of the spin operators.
    Range {
        #[arg(long)]
        spin: String,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::failure(EXIT_VALIDATION, text)
            } else {
                CommandResult::ok(text, String::new())
            };
        }
    };
    match commands::execute(cli.command) {
        Ok(result) => result,
        Err(err) => CommandResult::failure(err.exit_code(), format!("error: {err}\n")),
    }
}
