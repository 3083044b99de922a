//! Initial data, boundary conditions and scheme parameters of each case.

use std::f64::consts::PI;

use apem_core::onefluid::{self, OneFluidSnapshot};
use apem_core::scaling::{compute_scaling, ScalingUnits, Temperature, ATOMIC_MASS_UNIT, ELECTRON_MASS};
use apem_core::twofluid::{self, TwoFluidSnapshot};
use apem_core::{
    BoundaryConditionSpec, EMField, EmBc, FluidState, Grid1D, IncidentWave, PressureLaw, SchemeConfig, SchemeKind,
};
use serde::Serialize;

use crate::config::{Case, EmBoundary, ExperimentConfig};
use crate::error::{HarnessError, Result};

/// POS incident field in V/m and its rise time and duration in seconds.
pub const POS_INCIDENT_FIELD: f64 = -1.8e8;
pub const POS_RISE_TIME: f64 = 1e-8;
pub const POS_FINAL_TIME: f64 = 2.5e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Simulation {
    One(OneFluidSnapshot),
    Two(TwoFluidSnapshot),
}

impl Simulation {
    pub fn grid(&self) -> &Grid1D {
        match self {
            Simulation::One(s) => &s.grid,
            Simulation::Two(s) => &s.grid,
        }
    }

    pub fn em(&self) -> &EMField {
        match self {
            Simulation::One(s) => &s.em,
            Simulation::Two(s) => &s.em,
        }
    }

    pub fn t(&self) -> f64 {
        match self {
            Simulation::One(s) => s.t,
            Simulation::Two(s) => s.t,
        }
    }

    pub fn steps(&self) -> usize {
        match self {
            Simulation::One(s) => s.m,
            Simulation::Two(s) => s.m,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Simulation::One(s) => s.is_finite(),
            Simulation::Two(s) => s.is_finite(),
        }
    }

    pub fn step(&mut self, delta: f64, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> apem_core::Result<()> {
        match self {
            Simulation::One(s) => onefluid::step(s, delta, cfg, bc),
            Simulation::Two(s) => twofluid::step_2f(s, delta, cfg, bc),
        }
    }

    pub fn stable_timestep(&self, cfg: &SchemeConfig, bc: &BoundaryConditionSpec) -> apem_core::Result<f64> {
        match self {
            Simulation::One(s) => onefluid::stable_timestep(s, cfg, bc),
            Simulation::Two(s) => twofluid::stable_timestep_2f(s, cfg, bc),
        }
    }

    pub fn gauss_residual(&self, lambda: f64) -> apem_core::Result<Vec<f64>> {
        match self {
            Simulation::One(s) => s.gauss_residual(lambda),
            Simulation::Two(s) => s.gauss_residual(lambda),
        }
    }
}

/// Physical units of a POS run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalUnits {
    pub x0: f64,
    pub n0: f64,
    pub t0: f64,
    pub u0: f64,
    pub e0: f64,
    pub b0: f64,
    pub lambda: f64,
    pub mass: f64,
}

impl From<&ScalingUnits> for PhysicalUnits {
    fn from(u: &ScalingUnits) -> Self {
        Self { x0: u.x0, n0: u.n0, t0: u.t0, u0: u.u0, e0: u.e0, b0: u.b0, lambda: u.lambda, mass: u.mass }
    }
}

#[derive(Debug, Clone)]
pub struct Setup {
    pub sim: Simulation,
    pub scheme: SchemeConfig,
    pub bc: BoundaryConditionSpec,
    pub lambda: f64,
    pub t_end: f64,
    pub units: Option<PhysicalUnits>,
    pub notes: Vec<String>,
}

/// Raised-cosine plateau: 1 inside `[a + w, b - w]`, 0 outside `[a, b]`.
pub fn plateau_profile(x: f64, a: f64, b: f64, w: f64) -> f64 {
    if x <= a || x >= b {
        0.0
    } else if w > 0.0 && x < a + w {
        0.5 * (1.0 - (PI * (x - a) / w).cos())
    } else if w > 0.0 && x > b - w {
        0.5 * (1.0 - (PI * (b - x) / w).cos())
    } else {
        1.0
    }
}

pub fn build_setup(cfg: &ExperimentConfig) -> Result<Setup> {
    cfg.validate()?;
    let mut notes = Vec::new();

    let scaling = if cfg.case.is_pos() {
        let mass = if cfg.fluids == 2 { cfg.ion_mass_amu * ATOMIC_MASS_UNIT } else { ELECTRON_MASS };
        Some(compute_scaling(cfg.x0, cfg.n0, Temperature::ElectronVolt(cfg.t0_ev), mass)?)
    } else {
        None
    };
    let lambda = match (cfg.lambda, &scaling) {
        (Some(l), _) => l,
        (None, Some(u)) => u.lambda,
        (None, None) => 1.0,
    };
    if lambda == 0.0 && cfg.scheme.kind() == SchemeKind::Classical {
        return Err(HarnessError::Config("lambda = 0 requires scheme = ap".into()));
    }

    let n_cells = match cfg.n_cells {
        Some(n) => n,
        None if lambda > 0.0 => (((cfg.x_max - cfg.x_min) / (10.0 * lambda)).round() as usize).max(1),
        None => return Err(HarnessError::Config("n_cells is required when lambda = 0".into())),
    };
    let grid = Grid1D::new(cfg.x_min, cfg.x_max, n_cells)?;

    let t_end = match (cfg.t_end, &scaling) {
        (Some(t), _) => t,
        (None, Some(u)) => POS_FINAL_TIME / u.t0,
        (None, None) if cfg.case == Case::Pulse => {
            // pulse center to right edge plus three widths at light speed 1/λ
            lambda * (cfg.x_max - cfg.pulse_center + 3.0 * cfg.pulse_width)
        }
        (None, None) => return Err(HarnessError::Config("t_end is required".into())),
    };

    let incident = match cfg.em_bc {
        EmBoundary::SilverMuller => {
            let amplitude = cfg.incident_amplitude.or(scaling.as_ref().map(|u| POS_INCIDENT_FIELD / u.e0));
            let rise = cfg.incident_rise_time.or(scaling.as_ref().map(|u| POS_RISE_TIME / u.t0)).unwrap_or(0.0);
            amplitude.filter(|a| *a != 0.0).map(|amplitude| IncidentWave { amplitude, rise_time: rise })
        }
        _ => None,
    };
    let em_bc = match cfg.em_bc {
        EmBoundary::ZeroField => EmBc::ZeroField,
        EmBoundary::Periodic => EmBc::Periodic,
        EmBoundary::SilverMuller => EmBc::SilverMuller { incident, b_ref: cfg.bz0 },
    };
    let bc = BoundaryConditionSpec::new(cfg.fluid_bc.core(), em_bc)?;
    if apem_core::boundary::silver_muller_degenerate(&bc, lambda) {
        notes.push("lambda = 0 with Silver-Muller boundaries: B_z is pinned to its reference value at the boundaries".into());
    }

    let mut scheme = SchemeConfig::new(cfg.scheme.kind(), lambda);
    scheme.cfl = cfg.cfl;
    scheme.pressure = PressureLaw::Isothermal { t: cfg.temperature };
    scheme.ey_system = cfg.ey_system.core();
    scheme.density_floor = cfg.density_floor;
    scheme.vacuum_density = cfg.vacuum_density;
    scheme.eps2 = match (&scaling, cfg.fluids) {
        (Some(u), 2) => ELECTRON_MASS / u.mass,
        _ => cfg.eps2,
    };
    scheme.validate()?;

    let xs = grid.centers();
    let n = xs.len();
    let (density, ux): (Vec<f64>, Vec<f64>) = match cfg.case {
        Case::Shock | Case::Rarefaction | Case::ShockMagnetized => {
            let mid = 0.5 * (cfg.x_min + cfg.x_max);
            (vec![1.0; n], xs.iter().map(|&x| if x < mid { cfg.u_left } else { cfg.u_right }).collect())
        }
        Case::PosLow | Case::PosHigh => {
            let d = xs
                .iter()
                .map(|&x| {
                    let s = plateau_profile(x, cfg.plasma_min, cfg.plasma_max, cfg.ramp_width);
                    cfg.density_floor + (1.0 - cfg.density_floor) * s
                })
                .collect();
            (d, vec![0.0; n])
        }
        Case::Smooth => {
            let l = cfg.x_max - cfg.x_min;
            (vec![1.0; n], xs.iter().map(|&x| cfg.amplitude * (2.0 * PI * (x - cfg.x_min) / l).sin()).collect())
        }
        Case::Pulse => (vec![cfg.density_floor; n], vec![0.0; n]),
    };

    let mut em = EMField::with_bz(n, cfg.bz0);
    if cfg.case == Case::Pulse {
        // right-moving wave: λE_y - (B_z - b_ref) = 0
        let g = |x: f64| cfg.amplitude * (-((x - cfg.pulse_center) / cfg.pulse_width).powi(2)).exp();
        em.ey = xs.iter().map(|&x| g(x)).collect();
        em.bz = grid.interfaces().iter().map(|&x| cfg.bz0 + lambda * g(x)).collect();
    }

    let fluid = |d: &[f64]| -> Result<FluidState> {
        let qx = d.iter().zip(&ux).map(|(n, u)| n * u).collect();
        Ok(FluidState::new(d.to_vec(), qx, vec![0.0; n])?)
    };
    let mut sim = if cfg.fluids == 1 {
        let background = if matches!(cfg.case, Case::PosLow | Case::PosHigh | Case::Pulse) { density.clone() } else { vec![1.0; n] };
        Simulation::One(OneFluidSnapshot::with_background(grid, fluid(&density)?, background, em)?)
    } else {
        // Riemann cases: only the electrons carry the velocity jump, ions start at rest
        let ion = if matches!(cfg.case, Case::Shock | Case::Rarefaction | Case::ShockMagnetized) {
            FluidState::new(density.clone(), vec![0.0; n], vec![0.0; n])?
        } else {
            fluid(&density)?
        };
        Simulation::Two(TwoFluidSnapshot::new(grid, ion, fluid(&density)?, em)?)
    };
    if lambda > 0.0 {
        match &mut sim {
            Simulation::One(s) => s.init_ex(lambda, 0.0)?,
            Simulation::Two(s) => s.init_ex(lambda, 0.0)?,
        }
    }

    Ok(Setup { sim, scheme, bc, lambda, t_end, units: scaling.as_ref().map(PhysicalUnits::from), notes })
}
