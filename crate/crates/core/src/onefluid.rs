//! One-fluid (mobile electrons, static ions) time updates.

use crate::boundary::BoundaryConditionSpec;
use crate::error::{CoreError, Result};
use crate::flux::{cfl_timestep, SchemeKind};
use crate::gauss::{gauss_residual_with_background, init_ex_from_charge};
use crate::grid::Grid1D;
use crate::scheme::{advance, SchemeConfig, SpeciesMut, StepContext};
use crate::state::{EMField, FluidState};

#[derive(Debug, Clone, PartialEq)]
pub struct OneFluidSnapshot {
    pub grid: Grid1D,
    pub fluid: FluidState,
    /// Static ion density; uniform `1` unless the experiment sets a profile.
    pub background: Vec<f64>,
    pub em: EMField,
    pub t: f64,
    pub m: usize,
    /// `E_y` at the previous level, kept for the history form of the `E_y` rows.
    pub ey_prev: Option<Vec<f64>>,
}

impl OneFluidSnapshot {
    pub fn new(grid: Grid1D, fluid: FluidState, em: EMField) -> Result<Self> {
        let background = vec![1.0; grid.n_cells];
        Self::with_background(grid, fluid, background, em)
    }

    pub fn with_background(grid: Grid1D, fluid: FluidState, background: Vec<f64>, em: EMField) -> Result<Self> {
        let n = grid.n_cells;
        if fluid.len() != n {
            return Err(CoreError::LengthMismatch { expected: n, got: fluid.len() });
        }
        if background.len() != n {
            return Err(CoreError::LengthMismatch { expected: n, got: background.len() });
        }
        if em.n_cells() != n {
            return Err(CoreError::LengthMismatch { expected: n, got: em.n_cells() });
        }
        Ok(Self { grid, fluid, background, em, t: 0.0, m: 0, ey_prev: None })
    }

    pub fn charge(&self) -> Vec<f64> {
        self.background.iter().zip(&self.fluid.n).map(|(b, n)| b - n).collect()
    }

    /// Overwrite `E_x` with the Gauss-consistent field anchored at the left end.
    pub fn init_ex(&mut self, lambda: f64, anchor: f64) -> Result<()> {
        self.em.ex = init_ex_from_charge(&self.charge(), lambda, self.grid.h, anchor)?;
        Ok(())
    }

    pub fn gauss_residual(&self, lambda: f64) -> Result<Vec<f64>> {
        gauss_residual_with_background(&self.fluid, &self.background, &self.em, lambda, self.grid.h)
    }

    pub fn is_finite(&self) -> bool {
        self.fluid.is_finite() && self.em.is_finite()
    }
}

fn step_kind(snap: &mut OneFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec, kind: SchemeKind) -> Result<()> {
    let cfg = SchemeConfig { kind, ..*cfg };
    let old_ey = snap.em.ey.clone();
    let ctx = StepContext { h: snap.grid.h, delta, t: snap.t, cfg: &cfg, bc, ey_prev: snap.ey_prev.as_deref() };
    let mut species = [SpeciesMut { state: &mut snap.fluid, charge: -1.0, inertia: 1.0 }];
    advance(&mut species, &mut snap.em, &ctx)?;
    snap.ey_prev = Some(old_ey);
    snap.t += delta;
    snap.m += 1;
    Ok(())
}

/// Classical `(0,0,1)` step.
pub fn step_classical(snap: &mut OneFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<()> {
    step_kind(snap, delta, cfg, bc, SchemeKind::Classical)
}

/// Asymptotic-preserving `(1,1,1)` step.
pub fn step_ap(snap: &mut OneFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<()> {
    step_kind(snap, delta, cfg, bc, SchemeKind::Ap)
}

/// Step with the scheme selected in `cfg`.
pub fn step(snap: &mut OneFluidSnapshot, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<()> {
    step_kind(snap, delta, cfg, bc, cfg.kind)
}

pub fn stable_timestep(snap: &OneFluidSnapshot, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> Result<f64> {
    cfl_timestep(&[(&snap.fluid, 1.0)], &cfg.pressure, bc.fluid, snap.grid.h, cfg.cfl, cfg.lambda, cfg.kind)
}
