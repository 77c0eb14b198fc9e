//! Per-method aggregation, result tables and configuration sweeps.

mod aggregate;
mod rank;
mod sweep;
mod table;

pub use aggregate::{aggregate, MethodSummary, SemanticSummary};
pub use rank::{kendall_tau, ranking, RankKey};
pub use sweep::{expand_grid, run_sweep, GridAxis, GridParam, GridPoint, SweepPoint, SweepResult};
pub use table::{combine, parse_csv, render_csv, render_markdown, ReportRow, METRIC_COLUMNS};
