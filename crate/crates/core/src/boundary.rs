//! Fluid ghost cells, periodic closure and Silver-Müller electromagnetic
//! boundaries with an optional incident wave on the left.

use crate::error::{CoreError, Result};
use crate::state::{CellState, EMField, FluidState};

/// Ghost layers on each side; the implicit mass flux reaches two cells out.
pub const GHOSTS: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluidBc {
    Neumann,
    Periodic,
}

/// Linear ramp from 0 to `amplitude` over `rise_time`, constant afterwards.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentWave {
    pub amplitude: f64,
    pub rise_time: f64,
}

pub fn incident_wave(t: f64, wave: &IncidentWave) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if wave.rise_time <= 0.0 {
        return wave.amplitude;
    }
    wave.amplitude * (t / wave.rise_time).min(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EmBc {
    /// Characteristic conditions `λE_y + (B_z - b_ref) = 2λ·inc(t)` on the left and
    /// `λE_y - (B_z - b_ref) = 0` on the right. `b_ref` is the background field the
    /// boundaries are transparent for.
    SilverMuller { incident: Option<IncidentWave>, b_ref: f64 },
    Periodic,
    /// `E_y` ghost values are zero.
    ZeroField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryConditionSpec {
    pub fluid: FluidBc,
    pub em: EmBc,
}

impl BoundaryConditionSpec {
    pub fn new(fluid: FluidBc, em: EmBc) -> Result<Self> {
        let spec = Self { fluid, em };
        spec.validate()?;
        Ok(spec)
    }

    pub fn periodic() -> Self {
        Self { fluid: FluidBc::Periodic, em: EmBc::Periodic }
    }

    pub fn neumann_zero_field() -> Self {
        Self { fluid: FluidBc::Neumann, em: EmBc::ZeroField }
    }

    pub fn validate(&self) -> Result<()> {
        let fluid_periodic = self.fluid == FluidBc::Periodic;
        let em_periodic = matches!(self.em, EmBc::Periodic);
        if fluid_periodic != em_periodic {
            return Err(CoreError::InvalidBoundary(
                "periodic closure must be chosen for both the fluid and the field or for neither".into(),
            ));
        }
        Ok(())
    }

    pub fn incident_at(&self, t: f64) -> f64 {
        match self.em {
            EmBc::SilverMuller { incident: Some(w), .. } => incident_wave(t, &w),
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidGhosts {
    /// Cells `-2, -1`.
    pub left: [CellState; GHOSTS],
    /// Cells `N, N+1`.
    pub right: [CellState; GHOSTS],
}

pub fn apply_fluid_bc(state: &FluidState, bc: FluidBc) -> FluidGhosts {
    let n = state.len();
    match bc {
        FluidBc::Neumann => {
            let (first, last) = (state.cell(0), state.cell(n - 1));
            FluidGhosts { left: [first; GHOSTS], right: [last; GHOSTS] }
        }
        FluidBc::Periodic => {
            let wrap = |k: isize| state.cell(k.rem_euclid(n as isize) as usize);
            FluidGhosts {
                left: [wrap(-2), wrap(-1)],
                right: [wrap(n as isize), wrap(n as isize + 1)],
            }
        }
    }
}

/// Copy of `state` padded with `GHOSTS` cells per side; cell `k` sits at `k + GHOSTS`.
pub fn extend_with_ghosts(state: &FluidState, bc: FluidBc) -> FluidState {
    let g = apply_fluid_bc(state, bc);
    let len = state.len() + 2 * GHOSTS;
    let mut ext = FluidState { n: Vec::with_capacity(len), qx: Vec::with_capacity(len), qy: Vec::with_capacity(len) };
    let mut push = |c: &CellState| {
        ext.n.push(c.n);
        ext.qx.push(c.qx);
        ext.qy.push(c.qy);
    };
    g.left.iter().for_each(&mut push);
    (0..state.len()).for_each(|k| push(&state.cell(k)));
    g.right.iter().for_each(&mut push);
    ext
}

/// Ghost `E_y` as a function of the adjacent interior value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EyClosure {
    /// `ghost = alpha·edge + beta`.
    Linear { alpha: f64, beta: f64 },
    /// `ghost` is the opposite edge value.
    Periodic,
}

impl EyClosure {
    pub fn ghost(&self, edge: f64, opposite_edge: f64) -> f64 {
        match *self {
            EyClosure::Linear { alpha, beta } => alpha * edge + beta,
            EyClosure::Periodic => opposite_edge,
        }
    }
}

/// Ghost relations for both sides of the `E_y` row set.
///
/// `kappa = θδ/h` where `θ` weights `B_z^{m+1}` in the boundary relation: 1 when
/// `E_y` and `B_z^{m+1}` share a time level (AP), 1/2 for the leapfrog-staggered
/// classical update. `bz_left`, `bz_right` are `B_z^m` on the boundary interfaces.
pub fn ey_closures(
    em_bc: &EmBc,
    lambda: f64,
    kappa: f64,
    bz_left: f64,
    bz_right: f64,
    incident: f64,
) -> (EyClosure, EyClosure) {
    match *em_bc {
        EmBc::Periodic => (EyClosure::Periodic, EyClosure::Periodic),
        EmBc::ZeroField => (
            EyClosure::Linear { alpha: 0.0, beta: 0.0 },
            EyClosure::Linear { alpha: 0.0, beta: 0.0 },
        ),
        EmBc::SilverMuller { b_ref, .. } => {
            let denom = kappa + 0.5 * lambda;
            let alpha = (kappa - 0.5 * lambda) / denom;
            let left = EyClosure::Linear {
                alpha,
                beta: (2.0 * lambda * incident - (bz_left - b_ref)) / denom,
            };
            let right = EyClosure::Linear { alpha, beta: (bz_right - b_ref) / denom };
            (left, right)
        }
    }
}

/// Boundary ghost values of the field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmGhosts {
    pub ey_left: f64,
    pub ey_right: f64,
    pub ex_left: f64,
    pub ex_right: f64,
}

pub fn apply_em_bc(em: &EMField, lambda: f64, kappa: f64, t: f64, spec: &BoundaryConditionSpec) -> EmGhosts {
    let n = em.n_cells();
    let (cl, cr) = ey_closures(&spec.em, lambda, kappa, em.bz[0], em.bz[n], spec.incident_at(t));
    EmGhosts {
        ey_left: cl.ghost(em.ey[0], em.ey[n - 1]),
        ey_right: cr.ghost(em.ey[n - 1], em.ey[0]),
        ex_left: em.ex[0],
        ex_right: em.ex[n],
    }
}

/// True when a Silver-Müller boundary degenerates (λ = 0) to `B_z` pinned at `b_ref`.
pub fn silver_muller_degenerate(spec: &BoundaryConditionSpec, lambda: f64) -> bool {
    matches!(spec.em, EmBc::SilverMuller { .. }) && lambda == 0.0
}
