//! `hecke`: run identity checks, print number-theory tables, time the
//! series engine.
//!
//! Exit status: 0 when the check passes, 1 when it fails, 2 on bad input.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hecke_core::identities::{
    self, default_trunc, verify_delta_hecke, verify_exp_identity, verify_lemma32,
    verify_moebius_relations, verify_prop_q, verify_theorem_main, verify_theorem_prime,
};
use hecke_core::{UpperHalfPoint, VerifyReport};

mod bench;
mod table;

#[derive(Debug, Parser)]
#[command(name = "hecke", version, about = "Exact checks of partition identities over Hecke cosets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    ThmMain,
    ThmPrime,
    PropQ1,
    PropQ2,
    Lemma32,
    Exp,
    Moebius,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Arith,
    Cosets,
    Partitions,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify one identity at level N.
    Verify {
        identity: Identity,
        /// Level N (the upper bound N_max for `moebius`).
        #[arg(long = "n")]
        n: u64,
        /// Truncation order; defaults to max(4N, 48).
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tau_re: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        tau_im: f64,
        /// Relative tolerance for the discriminant check.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Print a table of arithmetic functions, cosets, or partition numbers.
    Table {
        kind: TableKind,
        /// Largest N (arith) or T (partitions).
        #[arg(long)]
        max: Option<u64>,
        /// Level for `cosets`.
        #[arg(long = "n")]
        n: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Time the phases of the main theorem check.
    Bench {
        #[arg(long = "n")]
        n: u64,
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
}

pub(crate) fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn run_verify(
    identity: Identity,
    n: u64,
    trunc: Option<usize>,
    tau: (f64, f64),
    tol: f64,
) -> hecke_core::Result<VerifyReport> {
    if n == 0 {
        return Err(hecke_core::Error::ZeroArgument { op: "verify" });
    }
    let trunc = trunc.unwrap_or_else(|| default_trunc(n));
    match identity {
        Identity::ThmMain => verify_theorem_main(n, trunc),
        Identity::ThmPrime => verify_theorem_prime(n, trunc),
        Identity::PropQ1 => verify_prop_q(n, trunc, false),
        Identity::PropQ2 => verify_prop_q(n, trunc, true),
        Identity::Lemma32 => verify_lemma32(n),
        Identity::Exp => verify_exp_identity(n),
        Identity::Moebius => verify_moebius_relations(n),
        Identity::Delta => {
            let point = UpperHalfPoint::new(tau.0, tau.1)?;
            verify_delta_hecke(n, point, trunc, tol)
        }
    }
}

fn emit_report(report: &VerifyReport, format: OutputFormat) {
    match format {
        OutputFormat::Plain => println!("{report}"),
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            identity,
            n,
            trunc,
            tau_re,
            tau_im,
            tol,
            format,
        } => {
            if !(tol > 0.0) {
                return usage_error(format!("tolerance must be positive, got {tol}"));
            }
            match run_verify(identity, n, trunc, (tau_re, tau_im), tol) {
                Ok(report) => {
                    emit_report(&report, format);
                    if report.pass() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => usage_error(e),
            }
        }
        Command::Table {
            kind,
            max,
            n,
            format,
        } => table::run(kind, max, n, format),
        Command::Bench {
            n,
            trunc,
            repeats,
            format,
        } => {
            let trunc = trunc.unwrap_or_else(|| identities::default_trunc(n));
            bench::run(n, trunc, repeats, format)
        }
    }
}
