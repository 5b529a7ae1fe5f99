use clap::Args;
use sptree_core::error::{Error, Result};
use sptree_core::protocol::enumerate_certificates;
use sptree_core::slack::{
    build_support_matrix, exact_min_rectangle_cover, greedy_rectangle_cover,
};
use sptree_core::verify::extract_rectangle;

/// Exact minimization explodes past 4 nodes; greedy stays feasible to 6.
const MAX_EXACT_N: u32 = 4;
const MAX_GREEDY_N: u32 = 6;

#[derive(Args)]
pub struct CoverArgs {
    /// Instance size (number of nodes), at least 3.
    #[arg(long)]
    n: u32,
}

pub fn run(args: CoverArgs) -> Result<bool> {
    let n = args.n;
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "cover needs n >= 3, got {n}"
        )));
    }
    if n > MAX_GREEDY_N {
        return Err(Error::CapExceeded {
            what: "cover",
            actual: n as u64,
            limit: MAX_GREEDY_N as u64,
        });
    }

    let m = build_support_matrix(n, false)?;
    println!("n: {n}");
    println!(
        "support: {} rows x {} cols, {} ones",
        m.facets().len(),
        m.trees().len(),
        m.support().count_ones()
    );

    if n <= MAX_EXACT_N {
        let (size, rects) = exact_min_rectangle_cover(&m)?;
        println!("exact: {size}");
        for (i, r) in rects.iter().enumerate() {
            println!(
                "  rectangle {}: {} rows x {} cols",
                i + 1,
                r.rows.len(),
                r.cols.len()
            );
        }
    } else {
        println!("exact: skipped (feasible up to {MAX_EXACT_N} nodes)");
    }

    let pool: Vec<_> = enumerate_certificates(n)
        .iter()
        .map(|c| extract_rectangle(c, n)?.to_cover_rectangle(&m))
        .collect::<Result<_>>()?;
    let picked = greedy_rectangle_cover(&m, &pool)?;
    println!(
        "greedy: {picked} (pool of {} certificate rectangles)",
        pool.len()
    );
    Ok(true)
}
