use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use sptree_core::error::Result;
use sptree_core::slack::{build_support_matrix, export_matrix, ExportFormat};

#[derive(Args)]
pub struct ExportArgs {
    /// Instance size (number of nodes), at least 3.
    #[arg(long)]
    n: u32,

    /// Output encoding.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Append the nonnegativity rows after the cycle rows.
    #[arg(long)]
    include_nonneg: bool,

    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Bin,
}

pub fn run(args: ExportArgs) -> Result<bool> {
    let m = build_support_matrix(args.n, args.include_nonneg)?;
    let bytes = export_matrix(
        &m,
        match args.format {
            FormatArg::Csv => ExportFormat::Csv,
            FormatArg::Bin => ExportFormat::Binary,
        },
    );
    match &args.out {
        Some(path) => fs::write(path, &bytes)?,
        None => io::stdout().lock().write_all(&bytes)?,
    }
    Ok(true)
}
