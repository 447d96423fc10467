//! Evaluation protocols: paired GIS differences, two-group t-tests,
//! readability formulas and correlation with them.

mod pairs;
mod readability;
mod report;
mod stats;

pub use pairs::{gis_difference, pair_stats, CompareReport, PairOutcome};
pub use readability::{ari, fkgl};
pub use report::{format_number, BenchReport, CorrelateReport, CorrelateRow, PairsReport};
pub use stats::{
    correlate_readability, ln_gamma, pearson, regularized_incomplete_beta, student_t_two_sided,
    ttest_ind, CorrelationReport, TTestKind, TTestReport,
};
