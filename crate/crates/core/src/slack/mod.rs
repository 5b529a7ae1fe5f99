//! Slack values over the constraint system, the 0/1 support matrix, its
//! serialization formats, and rectangle covers of the support.

mod cover;
mod matrix;

pub use cover::{
    exact_min_cover_grid, exact_min_rectangle_cover, greedy_rectangle_cover, CoverRectangle,
    MAX_COVER_ONES, MAX_COVER_ROWS,
};
pub use matrix::{
    build_support_matrix, export_matrix, import_binary, slack_value, BitGrid, ExportFormat,
    SupportMatrix, MAX_MATRIX_N,
};
