//! Convergence studies: τ-sweeps against certified references, the
//! `c → ∞` limit study, slope fits and CSV output.

mod fit;
mod record;
mod run;
mod spec;

pub use fit::{fit_loglog, fit_slope, SlopeFit};
pub use record::{parse_csv, read_csv, to_csv_string, write_csv, ConvergenceRecord, CSV_HEADER};
pub use run::{
    curve_slope, limit_slope, run_limit_study, run_study, run_tau_sweep, uniformity_ratios,
    StudyOutcome,
};
pub use spec::{parse_data, ResolvedSpec, Study, StudySpec};
