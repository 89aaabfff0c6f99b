//! `fwps`: command-line front end for fake weighted projective space
//! invariants and degree bounds.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "fwps", version, about = "Exact invariants and sharp degree bounds of fake weighted projective spaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Node budget for enumeration (overrides FWPS_BUDGET).
    #[arg(long, global = true, value_name = "NODES")]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct WeightsArg {
    /// Comma-separated positive integers, e.g. 6,4,1,1.
    #[arg(long, value_name = "LIST")]
    pub weights: String,
}

#[derive(Debug, Args)]
pub struct VerticesArg {
    /// Vertices separated by ';', coordinates by ',', e.g. "1,0;-1,2;-1,-2".
    #[arg(long, value_name = "VERTICES", allow_hyphen_values = true)]
    pub vertices: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundMode {
    Enumerate,
    Construct,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Anticanonical degree and index of P(weights), or of a fake quotient with --lambda.
    Degree {
        #[command(flatten)]
        weights: WeightsArg,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
    },
    /// Index of a weight system.
    Index {
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Factor and reduction of a weight system.
    Reduce {
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Well-formedness of a weight system.
    WfCheck {
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Unit-fraction partition A(Q) of a weight system.
    UfpOfWs {
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// Weight system Q(A) of a unit-fraction partition of 1/iota.
    WsOfUfp {
        #[arg(long)]
        iota: u64,
        /// Parts of the partition.
        #[arg(long, alias = "parts", value_name = "LIST")]
        weights: String,
    },
    /// Terms of the Sylvester-type sequence for iota.
    Sylvester {
        #[arg(long)]
        iota: u64,
        #[arg(long, default_value_t = 5)]
        length: usize,
    },
    /// Extremal weight system for (iota, dim) and its degree.
    Extremal {
        #[arg(long)]
        iota: u64,
        #[arg(long)]
        dim: usize,
    },
    /// Degree bound and the spaces attaining it.
    Bound {
        #[arg(long)]
        iota: u64,
        #[arg(long)]
        dim: usize,
    },
    /// All unit-fraction partitions of 1/iota of the given length.
    Enumerate {
        #[arg(long)]
        iota: u64,
        #[arg(long)]
        length: usize,
    },
    /// Check the head-product bound and its extremizers by enumeration.
    VerifySharpness {
        #[arg(long)]
        iota: u64,
        #[arg(long)]
        length: usize,
    },
    /// Check the degree bound by enumeration, by construction, or both.
    VerifyBound {
        #[arg(long)]
        iota: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = BoundMode::Both)]
        mode: BoundMode,
    },
    /// Lattice simplex of a reduced, well-formed weight system.
    Simplex {
        #[command(flatten)]
        weights: WeightsArg,
    },
    /// All invariants of a lattice simplex given by its vertices.
    AnalyzeSimplex {
        #[command(flatten)]
        vertices: VerticesArg,
    },
    /// Compare both sides of the volume formula for a simplex.
    CheckVolumeFormula {
        #[command(flatten)]
        vertices: VerticesArg,
    },
    /// Classify the Sylvester product inequality for all iota, n, r up to the given maxima.
    Lemma44Scan {
        #[arg(long, default_value_t = 10)]
        iota: u64,
        #[arg(long, default_value_t = 8)]
        length: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let budget = match commands::resolve_budget(cli.budget, std::env::var("FWPS_BUDGET").ok()) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    match commands::run(&cli.command, budget) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(report.render(cli.format).as_bytes());
            let code = if report.status == report::Status::Mismatch { 2 } else { 0 };
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
