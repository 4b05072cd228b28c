//! lzero: zeros of L-functions on the critical line.
//!
//! Subcommands drive the library over a family selector (a Dirichlet
//! character given by value rows or canonical index, the Ramanujan form,
//! or a JSON descriptor file) and emit machine-readable records as JSON
//! lines or CSV carrying the same numeric strings.
//!
//! Exit codes: 0 success, 2 partial solve failure, 3 verification
//! failure, 64 usage error.

mod commands;
mod emit;
mod family;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "lzero",
    version,
    about = "high-precision zeros of Dirichlet, modular and generic L-functions",
    after_help = "Precision comes from --digits, else the LZERO_DIGITS environment \
                  variable, else 30. Character rows list one rotation number per \
                  residue 1..=k; run the characters subcommand for the canonical \
                  enumeration of a modulus."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve zeros for a label range, one record per n
    Zeros(commands::ZerosArgs),
    /// Exact (and optionally asymptotic) zero counts up to a height
    Count(commands::CountArgs),
    /// Solve a range and run the invariant suite over the records
    Verify(commands::VerifyArgs),
    /// Ramanujan tau coefficients
    Tau(commands::TauArgs),
    /// Canonical character enumeration for a modulus
    Characters(commands::CharactersArgs),
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.cmd {
        Cmd::Zeros(a) => commands::zeros(a),
        Cmd::Count(a) => commands::count(a),
        Cmd::Verify(a) => commands::verify(a),
        Cmd::Tau(a) => commands::tau(a),
        Cmd::Characters(a) => commands::characters(a),
    }
}

fn main() {
    let code = match Cli::try_parse() {
        Ok(cli) => run(cli).unwrap_or_else(|msg| {
            eprintln!("error: {msg}");
            64
        }),
        Err(e) => {
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                0
            } else {
                64
            };
            let _ = e.print();
            code
        }
    };
    std::process::exit(code);
}
