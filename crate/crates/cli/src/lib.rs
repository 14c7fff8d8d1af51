//! Experiment harness around `plevo`: seeded runs with JSON results, CSV
//! convergence traces, SVG plots and multi-seed summary tables.

pub mod experiment;
pub mod svg;
pub mod table;
pub mod trace;

pub use experiment::{default_sigma, execute, write_run_outputs, Instance, RunResult};
pub use svg::render_svg_plot;
pub use table::{build_table, TableRow};
pub use trace::{read_trace_csv, trace_rows, write_trace_csv, TraceRow};
