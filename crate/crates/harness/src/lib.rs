//! Experiments for the 1D Euler-Maxwell schemes: Riemann problems, plasma
//! opening switch, smooth and vacuum-pulse cases, L¹ convergence studies and
//! the `apem` command-line driver.

pub mod analysis;
pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod setup;

pub use analysis::{
    convergence_study, fit_slope, l1_relative_error, resolution_sweep, restrict_fine_to_coarse, ConvergenceReport,
};
pub use config::{Case, ExperimentConfig, Scheme};
pub use error::{HarnessError, Result};
pub use output::{emit_outputs, read_snapshot_csv, write_snapshot_csv};
pub use run::{run_experiment, run_setup, RunResult};
pub use setup::{build_setup, Setup, Simulation};
