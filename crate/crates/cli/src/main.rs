mod cost;
mod cover;
mod export;
mod trace;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sptree_core::Error;

/// Verifier and explorer for the spanning-tree support protocol.
///
/// Exit codes: 0 when every requested check passes, 1 when a check finds
/// violations or a cover cannot be completed, 2 on usage errors and
/// exceeded size caps.
#[derive(Parser)]
#[command(name = "sptree", version, propagate_version = true)]
struct Cli {
    /// Worker threads for parallel sweeps; 0 picks the machine default.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the protocol checks at one instance size.
    Verify(verify::VerifyArgs),
    /// Tabulate certificate counts and costs against the target bound.
    CostTable(cost::CostArgs),
    /// Walk one instance end to end: witnesses, certificate, decisions.
    Trace(trace::TraceArgs),
    /// Write the support matrix as CSV or in the binary container.
    Export(export::ExportArgs),
    /// Compare exact and greedy rectangle covers of the support.
    Cover(cover::CoverArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command {
        Command::Verify(args) => verify::run(args),
        Command::CostTable(args) => cost::run(args),
        Command::Trace(args) => trace::run(args),
        Command::Export(args) => export::run(args),
        Command::Cover(args) => cover::run(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // An incomplete or invalid cover is a finding, not a usage error.
                Error::Uncovered { .. } | Error::RectangleOnZero { .. } => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
