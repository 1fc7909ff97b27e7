//! Config-driven experiment runs, result archives, and report rendering.

mod archive;
mod config;
mod report;
mod runner;

pub use archive::{Provenance, ResultsArchive, ARCHIVE_FILE};
pub use config::{BenchmarkSpec, RunConfig, DEFAULT_REPEATS};
pub use report::{emit_plot_data, render_table, PlotFile, FIGURE_IDS, TABLE_IDS};
pub use runner::{run_experiments, run_task};
