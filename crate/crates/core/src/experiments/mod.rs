//! Test functions, Bernstein-ellipse analytics, error sweeps, the
//! condition-number-constrained scaling experiment, the CSV dialect and the
//! figure drivers.
//!
//! Everything here is `f64`.

mod analytics;
mod csv_io;
mod fig4;
mod figures;
mod functions;
mod sweep;

pub use analytics::{
    breakpoint, breakpoint_exponent, ellipse_sup_norm, resolution_point, rho_rate, tau_of_gamma,
};
pub use csv_io::{
    emit_csv, format_float, parse_csv, read_csv, record_order, to_csv_string, write_csv,
    CsvDocument, CSV_HEADER,
};
pub use fig4::{
    log_log_slope, smallest_admissible_m, sweep_fig4, sweep_fig4_scheme, EpsilonMode, Fig4Config,
    Fig4Scheme,
};
pub use figures::{
    figure_jobs, run_figure, run_jobs, FigureId, FigureJob, FigurePlan, JobKind, Scale,
};
pub use functions::{registry, Smoothness, TestFunction};
pub use sweep::{
    approximate, n_range, sweep_error_vs_n, Noise, RecordFlag, Sampling, SweepConfig, SweepRecord,
};
