//! Command-line harness, report formats and parallel trial loops for the
//! C-GHZ analysis simulator in `cghz_core`.

pub mod cli;
pub mod output;
pub mod parallel;
pub mod report;
