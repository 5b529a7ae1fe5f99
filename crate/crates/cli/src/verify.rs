use clap::{Args, ValueEnum};
use sptree_core::error::{Error, Result};
use sptree_core::protocol::TieBreak;
use sptree_core::verify::{
    check_completeness_opts, check_soundness_opts, check_triangle_lemma_opts, CheckOptions, Mode,
    VerificationReport,
};

#[derive(Args)]
pub struct VerifyArgs {
    /// Instance size (number of nodes), at least 3.
    #[arg(long)]
    n: u32,

    /// Sweep every instance, or sample them.
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,

    /// Samples per check in randomized mode.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,

    /// Generator seed in randomized mode; results are reproducible per seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Also check the triangle transfer property.
    #[arg(long)]
    triangle: bool,

    /// Permit the 7-node exhaustive sweep, the largest supported; it is
    /// roughly a hundred times the 6-node work and reports progress on
    /// stderr.
    #[arg(long)]
    large: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Randomized,
}

pub fn run(args: VerifyArgs) -> Result<bool> {
    let mode = match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive,
        ModeArg::Randomized => Mode::Randomized {
            samples: args.samples,
            seed: args.seed,
        },
    };
    let exhaustive = matches!(mode, Mode::Exhaustive);
    if exhaustive && args.n > 6 && !args.large {
        return Err(Error::InvalidArgument(format!(
            "exhaustive verification at n = {} needs --large (n = 7) or --mode randomized",
            args.n
        )));
    }
    let opts = CheckOptions {
        progress: exhaustive && args.large,
    };

    let mut reports: Vec<VerificationReport> = vec![
        check_soundness_opts(args.n, mode, opts)?,
        check_completeness_opts(args.n, mode, TieBreak::LexMin, opts)?,
    ];
    if args.triangle {
        reports.push(check_triangle_lemma_opts(args.n, mode, opts)?);
    }

    let mut pass = true;
    for report in &reports {
        println!("{report}\n");
        pass &= report.passed();
    }
    println!(
        "overall: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    Ok(pass)
}
