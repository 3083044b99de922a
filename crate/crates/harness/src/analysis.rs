//! Relative L¹ errors, conservative restriction and convergence studies.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, Scheme};
use crate::error::{HarnessError, Result};
use crate::output::column;
use crate::run::{run_experiment, RunResult};

/// `Σ|num − ref| / Σ|ref|`; the cell width cancels on a uniform grid.
pub fn l1_relative_error(num: &[f64], reference: &[f64]) -> Result<f64> {
    if num.len() != reference.len() {
        return Err(HarnessError::Config(format!("length mismatch: {} vs {}", num.len(), reference.len())));
    }
    let norm: f64 = reference.iter().map(|r| r.abs()).sum();
    if norm == 0.0 {
        return Err(HarnessError::Config("reference field has zero L1 norm".into()));
    }
    let diff: f64 = num.iter().zip(reference).map(|(a, b)| (a - b).abs()).sum();
    Ok(diff / norm)
}

/// Mean of each block of `ratio` consecutive fine cells.
pub fn restrict_fine_to_coarse(fine: &[f64], ratio: usize) -> Result<Vec<f64>> {
    if ratio == 0 || fine.len() % ratio != 0 {
        return Err(HarnessError::Config(format!("fine length {} is not divisible by {ratio}", fine.len())));
    }
    Ok(fine.chunks(ratio).map(|c| c.iter().sum::<f64>() / ratio as f64).collect())
}

/// Least-squares slope of `log e` against `log h`.
pub fn fit_slope(h: &[f64], e: &[f64]) -> Result<f64> {
    if h.len() != e.len() || h.len() < 2 {
        return Err(HarnessError::Config("need at least two (h, error) pairs".into()));
    }
    if h.iter().chain(e).any(|v| !(*v > 0.0)) {
        return Err(HarnessError::Config("slopes need positive step sizes and errors".into()));
    }
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = e.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(HarnessError::Config("step sizes must not all be equal".into()));
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceReport {
    pub scheme: Scheme,
    pub resolutions: Vec<usize>,
    pub reference_cells: usize,
    pub h: Vec<f64>,
    /// Per field, the error at each resolution (max over snapshot times).
    pub errors: BTreeMap<String, Vec<f64>>,
    pub slopes: BTreeMap<String, f64>,
}

/// Runs `template` at each resolution and a classical reference at `reference`
/// cells, all concurrently, and fits the error slope of each field.
pub fn convergence_study(
    template: &ExperimentConfig,
    resolutions: &[usize],
    reference: usize,
    fields: &[&str],
) -> Result<ConvergenceReport> {
    if resolutions.len() < 2 {
        return Err(HarnessError::Config("a convergence study needs at least two resolutions".into()));
    }
    if let Some(n) = resolutions.iter().find(|&&n| n == 0 || reference % n != 0) {
        return Err(HarnessError::Config(format!("reference resolution {reference} is not a multiple of {n}")));
    }
    let mut configs: Vec<ExperimentConfig> = resolutions
        .iter()
        .map(|&n| ExperimentConfig { n_cells: Some(n), ..template.clone() })
        .collect();
    configs.push(ExperimentConfig { n_cells: Some(reference), scheme: Scheme::Classical, ..template.clone() });

    let runs: Vec<Result<RunResult>> = configs.par_iter().map(run_experiment).collect();
    let mut runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let reference_run = runs.pop().expect("reference run is present");

    let mut errors: BTreeMap<String, Vec<f64>> = BTreeMap::new();
    let mut h = Vec::new();
    for (run, &n) in runs.iter().zip(resolutions) {
        h.push(run.final_state.grid().h);
        let ratio = reference / n;
        for &field in fields {
            let mut worst: f64 = 0.0;
            for (snap, reference_snap) in run.snapshots.iter().zip(&reference_run.snapshots) {
                let coarse = restrict_fine_to_coarse(&column(reference_snap, field)?, ratio)?;
                worst = worst.max(l1_relative_error(&column(snap, field)?, &coarse)?);
            }
            errors.entry(field.to_string()).or_default().push(worst);
        }
    }
    let mut slopes = BTreeMap::new();
    for (field, e) in &errors {
        slopes.insert(field.clone(), fit_slope(&h, e)?);
    }
    Ok(ConvergenceReport {
        scheme: template.scheme,
        resolutions: resolutions.to_vec(),
        reference_cells: reference,
        h,
        errors,
        slopes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n_cells: usize,
    pub dx_over_lambda: f64,
    pub max_abs_qx: f64,
    pub steps: usize,
}

/// Runs `template` on each grid and reports `max|q_x|` at the final time, the
/// quantity compared across the `Δx/λ` sweep of the Riemann problems.
pub fn resolution_sweep(template: &ExperimentConfig, cells: &[usize]) -> Result<Vec<SweepRow>> {
    cells
        .par_iter()
        .map(|&n| {
            let run = run_experiment(&ExperimentConfig { n_cells: Some(n), ..template.clone() })?;
            let field = if template.fluids == 2 { "qex" } else { "qx" };
            let q = column(&run.final_state, field)?;
            Ok(SweepRow {
                n_cells: n,
                dx_over_lambda: if run.lambda > 0.0 { run.final_state.grid().h / run.lambda } else { f64::INFINITY },
                max_abs_qx: q.iter().map(|v| v.abs()).fold(0.0, f64::max),
                steps: run.steps,
            })
        })
        .collect()
}
