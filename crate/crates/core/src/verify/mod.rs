//! The check suite: each check pits an implementation against an
//! independent route to the same answer and reports structured violations.

mod checks;
mod report;

pub use checks::{
    check_combined_support, check_completeness, check_completeness_opts,
    check_completeness_with, check_rectangle_cover, check_slack_identity, check_soundness,
    check_soundness_opts, check_triangle_lemma, check_triangle_lemma_opts, cross_check_naive,
    extract_rectangle, CheckOptions, Rectangle, MAX_EXHAUSTIVE_N, MAX_TRIPLE_SCAN_N,
};
pub use report::{CheckKind, Mode, VerificationReport, Violation, ViolationKind};
