//! Two-fluid (ions and electrons) time updates with the ε²-weighted electron
//! momentum equations.

use crate::boundary::BoundaryConditionSpec;
use crate::error::{CoreError, Result};
use crate::flux::{cfl_timestep, SchemeKind};
use crate::gauss::{gauss_residual_2f, init_ex_from_charge};
use crate::grid::Grid1D;
use crate::scheme::{advance, SchemeConfig, SpeciesMut, StepContext};
use crate::state::{EMField, FluidState};

#[derive(Debug, Clone, PartialEq)]
pub struct TwoFluidSnapshot {
    pub grid: Grid1D,
    pub ion: FluidState,
    pub electron: FluidState,
    pub em: EMField,
    pub t: f64,
    pub m: usize,
    pub ey_prev: Option<Vec<f64>>,
}

impl TwoFluidSnapshot {
    pub fn new(grid: Grid1D, ion: FluidState, electron: FluidState, em: EMField) -> Result<Self> {
        let n = grid.n_cells;
        for len in [ion.len(), electron.len(), em.n_cells()] {
            if len != n {
                return Err(CoreError::LengthMismatch { expected: n, got: len });
            }
        }
        Ok(Self { grid, ion, electron, em, t: 0.0, m: 0, ey_prev: None })
    }

    pub fn charge(&self) -> Vec<f64> {
        self.ion.n.iter().zip(&self.electron.n).map(|(i, e)| i - e).collect()
    }

    pub fn init_ex(&mut self, lambda: f64, anchor: f64) -> Result<()> {
        self.em.ex = init_ex_from_charge(&self.charge(), lambda, self.grid.h, anchor)?;
        Ok(())
    }

    pub fn gauss_residual(&self, lambda: f64) -> Result<Vec<f64>> {
        gauss_residual_2f(&self.ion, &self.electron, &self.em, lambda, self.grid.h)
    }

    pub fn is_finite(&self) -> bool {
        self.ion.is_finite() && self.electron.is_finite() && self.em.is_finite()
    }
}

fn step_kind(snap: &mut TwoFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec, kind: SchemeKind) -> Result<()> {
    let cfg = SchemeConfig { kind, ..*cfg };
    let old_ey = snap.em.ey.clone();
    let ctx = StepContext { h: snap.grid.h, delta, t: snap.t, cfg: &cfg, bc, ey_prev: snap.ey_prev.as_deref() };
    let mut species = [
        SpeciesMut { state: &mut snap.ion, charge: 1.0, inertia: 1.0 },
        SpeciesMut { state: &mut snap.electron, charge: -1.0, inertia: cfg.eps2 },
    ];
    advance(&mut species, &mut snap.em, &ctx)?;
    snap.ey_prev = Some(old_ey);
    snap.t += delta;
    snap.m += 1;
    Ok(())
}

pub fn step_classical_2f(snap: &mut TwoFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<()> {
    step_kind(snap, delta, cfg, bc, SchemeKind::Classical)
}

pub fn step_ap_2f(snap: &mut TwoFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<()> {
    step_kind(snap, delta, cfg, bc, SchemeKind::Ap)
}

pub fn step_2f(snap: &mut TwoFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<()> {
    step_kind(snap, delta, cfg, bc, cfg.kind)
}

pub fn stable_timestep_2f(snap: &TwoFluidSnapshot, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<f64> {
    cfl_timestep(
        &[(&snap.ion, 1.0), (&snap.electron, cfg.eps2)],
        &cfg.pressure,
        bc.fluid,
        snap.grid.h,
        cfg.cfl,
        cfg.lambda,
        cfg.kind,
    )
}
