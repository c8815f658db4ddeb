//! Command-line front end: benchmarks in the reference table format,
//! oracle sweeps, data-owner share files and networked parties.
//!
//! Activations are applied element-wise over a `rows x cols` batch (softmax
//! per row of `cols` entries). `mat_mul` multiplies a `rows x cols` matrix by
//! a `cols x cols` one.

mod bench;
mod options;
mod party;
mod shares;
mod verify;

use std::io::Write;

use actmpc_core::Error;
use clap::{Parser, Subcommand};

pub use bench::{bench, render_csv, BenchRow, CSV_HEADER, PRESETS};
pub use options::{parse_config_file, Opts, Settings};
pub use verify::VerifyArgs;

#[derive(Debug, Parser)]
#[command(name = "actmpc", version, about = "Three-party secret-shared activation functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Time a protocol over random in-domain inputs and print
    /// Protocol,Dimension,Time(s),Comm.(mb) rows as CSV. Without --rows and
    /// --cols the three presets 64x16, 128x128 and 576x20 are run;
    /// `--protocol all` runs every benchmarked protocol.
    Bench {
        #[command(flatten)]
        opts: Opts,
    },
    /// Run a protocol on sample inputs and compare with the reference
    /// functions. Exits nonzero if any sample is outside tolerance.
    Verify {
        #[command(flatten)]
        opts: Opts,
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Encode a CSV of reals (one per line) and write P0's and P1's share
    /// files to <OUT>.p0 and <OUT>.p1.
    SplitShares {
        #[command(flatten)]
        opts: Opts,
        /// CSV file with one decimal value per line.
        #[arg(long)]
        input: std::path::PathBuf,
    },
    /// Combine two share files and print the decoded values, one per line.
    Reconstruct {
        #[command(flatten)]
        opts: Opts,
        /// The two share files (give the flag twice).
        #[arg(long = "input", num_args = 1, required = true)]
        inputs: Vec<std::path::PathBuf>,
    },
    /// Join a networked session as one party. P0 listens on --peer0, P1 on
    /// --peer1; P0 and P1 read their share files and write their output
    /// share to --out, the helper takes no input.
    Party {
        #[command(flatten)]
        opts: Opts,
        /// Input share file; give it twice for division and mat_mul.
        #[arg(long = "input", num_args = 1)]
        inputs: Vec<std::path::PathBuf>,
    },
}

/// Exit status for an error: 2 for bad invocations and inputs, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Config(_) | Error::Input(_) | Error::Range(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the process exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> actmpc_core::Result<i32> {
    match command {
        Command::Bench { opts } => bench::command(&Settings::resolve(opts)?, out, err),
        Command::Verify { opts, args } => verify::command(&Settings::resolve(opts)?, &args, out, err),
        Command::SplitShares { opts, input } => shares::split(&Settings::resolve(opts)?, &input, out),
        Command::Reconstruct { opts, inputs } => shares::reconstruct(&Settings::resolve(opts)?, &inputs, out),
        Command::Party { opts, inputs } => party::command(&Settings::resolve(opts)?, &inputs, err),
    }
}
