//! Snapshot CSV files and the JSON run summary.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use apem_core::state::face_average;
use serde::Serialize;

use crate::analysis::ConvergenceReport;
use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::run::RunResult;
use crate::setup::{PhysicalUnits, Simulation};

pub const HEADER_ONE_FLUID: [&str; 7] = ["x", "n", "qx", "qy", "Ex", "Ey", "Bz"];
pub const HEADER_TWO_FLUID: [&str; 10] = ["x", "ni", "qix", "qiy", "ne", "qex", "qey", "Ex", "Ey", "Bz"];

pub fn header(sim: &Simulation) -> &'static [&'static str] {
    match sim {
        Simulation::One(_) => &HEADER_ONE_FLUID,
        Simulation::Two(_) => &HEADER_TWO_FLUID,
    }
}

/// Cell-centered values of one output column; `E_x` and `B_z` are face averages.
pub fn column(sim: &Simulation, name: &str) -> Result<Vec<f64>> {
    let em = sim.em();
    let v = match (sim, name) {
        (_, "x") => sim.grid().centers(),
        (_, "Ex") => face_average(&em.ex)?,
        (_, "Ey") => em.ey.clone(),
        (_, "Bz") => face_average(&em.bz)?,
        (Simulation::One(s), "n") => s.fluid.n.clone(),
        (Simulation::One(s), "qx") => s.fluid.qx.clone(),
        (Simulation::One(s), "qy") => s.fluid.qy.clone(),
        (Simulation::Two(s), "ni") => s.ion.n.clone(),
        (Simulation::Two(s), "qix") => s.ion.qx.clone(),
        (Simulation::Two(s), "qiy") => s.ion.qy.clone(),
        (Simulation::Two(s), "ne") => s.electron.n.clone(),
        (Simulation::Two(s), "qex") => s.electron.qx.clone(),
        (Simulation::Two(s), "qey") => s.electron.qy.clone(),
        _ => return Err(HarnessError::Config(format!("unknown output field {name:?} for this model"))),
    };
    Ok(v)
}

/// Writes every column with 17 significant digits, enough to reload bit-for-bit.
pub fn write_snapshot_csv<W: Write>(sim: &Simulation, mut w: W) -> Result<()> {
    let names = header(sim);
    let cols: Vec<Vec<f64>> = names.iter().map(|n| column(sim, n)).collect::<Result<_>>()?;
    writeln!(w, "{}", names.join(","))?;
    for k in 0..sim.grid().n_cells {
        let row: Vec<String> = cols.iter().map(|c| format!("{:.16e}", c[k])).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Header names and columns of a snapshot CSV.
pub fn read_snapshot_csv<R: Read>(r: R) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut lines = BufReader::new(r).lines();
    let head = lines.next().ok_or_else(|| HarnessError::Config("empty CSV".into()))??;
    let names: Vec<String> = head.split(',').map(|s| s.trim().to_string()).collect();
    let mut cols = vec![Vec::new(); names.len()];
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(HarnessError::Config(format!("CSV row {} has {} fields, expected {}", i + 2, fields.len(), names.len())));
        }
        for (c, f) in cols.iter_mut().zip(fields) {
            c.push(f.trim().parse().map_err(|_| HarnessError::Config(format!("bad number {f:?} in CSV row {}", i + 2)))?);
        }
    }
    Ok((names, cols))
}

#[derive(Debug, Serialize)]
pub struct RunSummary<'a> {
    pub config: &'a ExperimentConfig,
    pub lambda: f64,
    pub eps2: Option<f64>,
    pub steps: usize,
    pub final_time: f64,
    pub snapshot_times: &'a [f64],
    pub gauss_drift: f64,
    pub wall_clock_seconds: f64,
    pub snapshot_files: Vec<String>,
    pub units: Option<PhysicalUnits>,
    pub notes: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<&'a ConvergenceReport>,
}

/// Writes `{prefix}_{i}.csv` per snapshot and `{prefix}_summary.json` into `dir`;
/// returns the paths written.
pub fn emit_outputs(
    result: &RunResult,
    cfg: &ExperimentConfig,
    dir: &Path,
    convergence: Option<&ConvergenceReport>,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (i, snap) in result.snapshots.iter().enumerate() {
        let path = dir.join(format!("{}_{i:03}.csv", cfg.output_prefix));
        let mut w = BufWriter::new(File::create(&path)?);
        write_snapshot_csv(snap, &mut w)?;
        w.flush()?;
        written.push(path);
    }
    let summary = RunSummary {
        config: cfg,
        lambda: result.lambda,
        eps2: result.eps2,
        steps: result.steps,
        final_time: result.final_state.t(),
        snapshot_times: &result.snapshot_times,
        gauss_drift: result.gauss_drift_max,
        wall_clock_seconds: result.wall_clock,
        snapshot_files: written.iter().filter_map(|p| p.file_name()).map(|s| s.to_string_lossy().into_owned()).collect(),
        units: result.units,
        notes: &result.notes,
        convergence,
    };
    let path = dir.join(format!("{}_summary.json", cfg.output_prefix));
    let mut w = BufWriter::new(File::create(&path)?);
    serde_json::to_writer_pretty(&mut w, &summary)?;
    writeln!(w)?;
    w.flush()?;
    written.push(path);
    Ok(written)
}
