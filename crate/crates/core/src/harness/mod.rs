//! Verification harness.

pub mod config;
pub mod eval;
pub mod output;
pub mod sampling;
pub mod suite;
pub mod sweep;

pub use config::{parse_config, RunConfig};
pub use suite::{run_verify, SuiteResult};
pub use sweep::{parse_grid, sweep, GridSpec, SweepField, SweepTable};
pub use eval::{eval_point, parse_y, PointEval};
pub use output::{parse_report, summarize, Format, ReportDocument};
