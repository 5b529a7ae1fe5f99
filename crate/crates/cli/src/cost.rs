use clap::Args;
use sptree_core::error::{Error, Result};
use sptree_core::protocol::{certificate_space_size, cost_bits};

#[derive(Args)]
pub struct CostArgs {
    /// Largest instance size to tabulate.
    #[arg(long, default_value_t = 1024)]
    max_n: u32,
}

fn target_bits(n: u32) -> f64 {
    2.0 * (n as f64).log2() + (n as f64).log2().log2()
}

/// Sizes worth a table row: everything when the range is small, otherwise
/// the small sizes, the powers of two, and the endpoint.
fn table_rows(max_n: u32) -> Vec<u32> {
    if max_n <= 100 {
        return (3..=max_n).collect();
    }
    let mut rows: Vec<u32> = (3..=10).collect();
    let mut p = 16u32;
    while p <= max_n {
        rows.push(p);
        p = match p.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    rows.push(max_n);
    rows.sort_unstable();
    rows.dedup();
    rows
}

pub fn run(args: CostArgs) -> Result<bool> {
    if args.max_n < 3 {
        return Err(Error::InvalidArgument(format!(
            "cost table needs max-n >= 3, got {}",
            args.max_n
        )));
    }

    // The bound itself is checked densely up to a million even when the
    // table only shows a sparse slice.
    let sweep_to = args.max_n.max(1_000_000);
    let mut pass = true;
    let (mut worst, mut worst_n) = (f64::NEG_INFINITY, 0u32);
    for n in 3..=sweep_to {
        let residual = cost_bits(n) - target_bits(n);
        if residual > worst {
            worst = residual;
            worst_n = n;
        }
        if residual > 4.0 + 1e-9 {
            eprintln!("bound exceeded at n = {n}: residual {residual:.6} bits");
            pass = false;
        }
    }

    println!("{:>9} {:>22} {:>10} {:>10} {:>9}", "n", "certificates", "cost", "target", "residual");
    for n in table_rows(args.max_n) {
        println!(
            "{:>9} {:>22} {:>10.3} {:>10.3} {:>9.3}",
            n,
            certificate_space_size(n),
            cost_bits(n),
            target_bits(n),
            cost_bits(n) - target_bits(n)
        );
    }
    println!("worst residual: {worst:.3} bits at n = {worst_n} (bound: 4 bits, swept 3..={sweep_to})");
    Ok(pass)
}
