//! Command-line front end.
//!
//! Exit codes: 0 success, 1 counterexample or determinant mismatch,
//! 2 usage, configuration or precondition error.

mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::identities::{IndexRange, OutputFormat, Suites, VariantPolicy};

pub use commands::{cmd_det, cmd_series, cmd_seq, cmd_verify, Emission};
pub use report::{DocumentSummary, ReportDocument, TOOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tribonacci", version, about = "Exact Tribonacci sequences, series, determinants and identity checks")]
pub struct Cli {
    /// Output format: json, csv or human.
    #[arg(long, global = true)]
    pub format: Option<OutputFormat>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for `verify` (1 runs sequentially).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Let counterexamples to printed-form variants fail the run.
    #[arg(long, global = true)]
    pub strict_as_stated: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Terms of a linear recurrence.
    Seq(SeqArgs),
    /// Determinant representations against the value they represent.
    Det(DetArgs),
    /// Truncated power series operations.
    Series(SeriesArgs),
    /// Run identity checks over a parameter grid.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    /// tribonacci, tribonacci-lucas, padovan, lstep:<l> or lstep-companion:<l>.
    #[arg(long, conflicts_with_all = ["coeffs", "init"])]
    pub preset: Option<String>,
    /// Recurrence coefficients c1,c2,... for a_n = c1 a_{n-1} + c2 a_{n-2} + ...
    #[arg(long, allow_hyphen_values = true, requires = "init")]
    pub coeffs: Option<String>,
    /// Initial values a0,a1,...
    #[arg(long, allow_hyphen_values = true, requires = "coeffs")]
    pub init: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SeqArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
    pub to: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DetRep {
    /// T_{2n+1} of (u,v,w;0,1,1) from the r_n band.
    T2n1,
    /// Band T_3, T_5, ... against (-1)^n r_n.
    CorT2n1,
    /// Bell determinant for T_{n+1} of (u,v,w;0,1,u).
    BellTribo,
    /// Bell determinant for the l-step Fibonacci number F_{n+1}.
    BellLstep,
}

#[derive(Debug, Clone, Args)]
pub struct DetArgs {
    #[arg(long, value_enum)]
    pub rep: DetRep,
    /// Parameters u,v,w.
    #[arg(long, default_value = "1,1,1", allow_hyphen_values = true)]
    pub uvw: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub l: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SeriesOp {
    /// Generating function of a recurrence (--preset or --coeffs/--init).
    Gf,
    /// Generating function of T_1, T_3, T_5, ... for --uvw.
    GfOdd,
    /// Generating function of an l-step sequence (--l).
    GfLstep,
    Recip,
    Exp,
    Log,
    Cameron,
    CameronInv,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub op: SeriesOp,
    /// Series coefficients c0,c1,... (recurrence coefficients for `gf`).
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// Initial values for `gf` with --coeffs.
    #[arg(long, allow_hyphen_values = true)]
    pub init: Option<String>,
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub uvw: Option<String>,
    #[arg(long)]
    pub l: Option<usize>,
    /// Number of coefficients to emit; defaults to the input length.
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct VerifyArgs {
    /// JSON configuration file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Comma-separated identity ids, or `all`.
    #[arg(long)]
    pub suites: Option<Suites>,
    /// default, as_stated_only or both.
    #[arg(long)]
    pub variant: Option<VariantPolicy>,
    /// Explicit triples "u,v,w;u,v,w;...".
    #[arg(long, allow_hyphen_values = true)]
    pub grid_uvw: Option<String>,
    /// Values of u, comma-separated; crossed with v and w.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_u: Option<String>,
    /// Values of v.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_v: Option<String>,
    /// Values of w.
    #[arg(long, allow_hyphen_values = true)]
    pub grid_w: Option<String>,
    /// Index ranges ("a..b" inclusive, or a single integer).
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<IndexRange>,
    #[arg(long)]
    pub k: Option<IndexRange>,
    #[arg(long)]
    pub i: Option<IndexRange>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<IndexRange>,
    #[arg(long)]
    pub j: Option<IndexRange>,
    #[arg(long)]
    pub l: Option<IndexRange>,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = match &cli.command {
        Command::Seq(a) => cmd_seq(a, cli.format.unwrap_or_default()),
        Command::Det(a) => cmd_det(a, cli.format.unwrap_or_default()),
        Command::Series(a) => cmd_series(a, cli.format.unwrap_or_default()),
        Command::Verify(a) => cmd_verify(a, &cli),
    };
    match result {
        Ok(emission) => match emission.write(cli.output.as_deref()) {
            Ok(()) => emission.code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
