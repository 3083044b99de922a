//! Time loop, snapshot recording and Gauss-drift bookkeeping.

use std::time::Instant;

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::setup::{build_setup, PhysicalUnits, Setup, Simulation};

#[derive(Debug, Clone)]
pub struct RunResult {
    pub final_state: Simulation,
    /// States at the requested snapshot times, the final time last.
    pub snapshots: Vec<Simulation>,
    pub snapshot_times: Vec<f64>,
    /// Max-norm drift of the Gauss residual from its initial value, one entry per step.
    pub gauss_drift: Vec<f64>,
    pub gauss_drift_max: f64,
    pub wall_clock: f64,
    pub steps: usize,
    pub lambda: f64,
    /// Electron inertia of two-fluid runs.
    pub eps2: Option<f64>,
    pub units: Option<PhysicalUnits>,
    pub notes: Vec<String>,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunResult> {
    let setup = build_setup(cfg)?;
    run_setup(setup, cfg)
}

fn max_drift(r: &[f64], r0: &[f64]) -> f64 {
    r.iter().zip(r0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn next_step(sim: &Simulation, setup: &Setup, cfg: &ExperimentConfig) -> Result<f64> {
    if let Some(dt) = cfg.dt {
        return Ok(dt);
    }
    let own = sim.stable_timestep(&setup.scheme, &setup.bc)?;
    Ok(match cfg.maxwell_dt_multiple {
        Some(k) if setup.lambda > 0.0 => own.min(k * cfg.cfl * sim.grid().h * setup.lambda),
        _ => own,
    })
}

/// Steps a prepared setup to its final time.
pub fn run_setup(setup: Setup, cfg: &ExperimentConfig) -> Result<RunResult> {
    let start = Instant::now();
    let t_end = setup.t_end;
    let mut times: Vec<f64> = cfg.snapshot_times.iter().copied().filter(|t| *t < t_end).collect();
    times.sort_by(f64::total_cmp);
    times.dedup();
    times.push(t_end);

    let first = next_step(&setup.sim, &setup, cfg)?;
    let estimate = (t_end / first).ceil();
    if estimate > cfg.max_steps as f64 {
        return Err(HarnessError::Config(format!(
            "{:?} scheme with lambda = {:e} needs about {estimate:.3e} steps of {first:.3e} to reach t = {t_end:e}; \
             the limit is max_steps = {}",
            cfg.scheme, setup.lambda, cfg.max_steps
        )));
    }

    let mut sim = setup.sim.clone();
    let r0 = sim.gauss_residual(setup.lambda)?;
    let mut gauss_drift = Vec::new();
    let mut snapshots = Vec::with_capacity(times.len());
    let mut next = 0;
    while next < times.len() && times[next] <= sim.t() {
        snapshots.push(sim.clone());
        next += 1;
    }
    while next < times.len() {
        if sim.steps() >= cfg.max_steps {
            return Err(HarnessError::Numerical(format!(
                "step budget max_steps = {} exhausted at t = {:e}",
                cfg.max_steps,
                sim.t()
            )));
        }
        let target = times[next];
        let mut delta = next_step(&sim, &setup, cfg)?;
        let remaining = target - sim.t();
        let snap_now = delta >= remaining * (1.0 - 1e-12);
        if snap_now {
            delta = remaining;
        }
        sim.step(delta, &setup.scheme, &setup.bc)?;
        if !sim.is_finite() {
            return Err(HarnessError::Numerical(format!("non-finite field after step {} (t = {:e})", sim.steps(), sim.t())));
        }
        gauss_drift.push(max_drift(&sim.gauss_residual(setup.lambda)?, &r0));
        if snap_now {
            snapshots.push(sim.clone());
            next += 1;
        }
    }
    let eps2 = matches!(sim, Simulation::Two(_)).then_some(setup.scheme.eps2);
    let gauss_drift_max = gauss_drift.iter().copied().fold(0.0, f64::max);
    Ok(RunResult {
        steps: sim.steps(),
        final_state: sim,
        snapshots,
        snapshot_times: times,
        gauss_drift,
        gauss_drift_max,
        wall_clock: start.elapsed().as_secs_f64(),
        lambda: setup.lambda,
        eps2,
        units: setup.units,
        notes: setup.notes,
    })
}
