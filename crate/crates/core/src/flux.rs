//! Local Lax-Friedrichs fluxes, interface wave speeds, implicit mass fluxes and
//! time-step selection.

use crate::boundary::{extend_with_ghosts, FluidBc, GHOSTS};
use crate::error::{CoreError, Result};
use crate::pressure::PressureLaw;
use crate::state::{CellState, FluidState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeedEstimate {
    pub mu: f64,
    pub nu_plus: f64,
    pub nu_minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InterfaceFlux {
    pub f_n: f64,
    pub f_ux: f64,
    pub f_uy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    Ion,
    Electron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    Classical,
    Ap,
}

fn check_cell(c: &CellState) -> Result<()> {
    if !(c.n.is_finite() && c.qx.is_finite() && c.qy.is_finite()) {
        return Err(CoreError::NonFinite("cell state"));
    }
    if c.n <= 0.0 {
        return Err(CoreError::NonPositiveDensity(c.n));
    }
    Ok(())
}

/// Slowest and fastest characteristic speeds `u - c`, `u + c` of one state.
#[inline]
fn speed_pair(c: &CellState, law: &PressureLaw, inertia: f64) -> (f64, f64) {
    let u = c.ux();
    let cs = (law.dp(c.n) / inertia).max(0.0).sqrt();
    (u - cs, u + cs)
}

#[inline]
pub(crate) fn wave_speed_unchecked(
    left: &CellState,
    right: &CellState,
    law: &PressureLaw,
    inertia: f64,
) -> WaveSpeedEstimate {
    let mid = CellState::mean(left, right);
    let (lo_mid, hi_mid) = speed_pair(&mid, law, inertia);
    let (lo_left, _) = speed_pair(left, law, inertia);
    let (_, hi_right) = speed_pair(right, law, inertia);
    let nu_plus = hi_mid.max(hi_right);
    let nu_minus = lo_mid.min(lo_left);
    WaveSpeedEstimate { mu: nu_plus.abs().max(nu_minus.abs()), nu_plus, nu_minus }
}

/// Interface viscosity for the one-fluid system.
pub fn wave_speed_mu(left: &CellState, right: &CellState, law: &PressureLaw) -> Result<WaveSpeedEstimate> {
    wave_speed_mu_species(left, right, law, 1.0)
}

/// Interface viscosity for a species whose momentum equation carries the inertia
/// coefficient `inertia` (1 for ions, ε² for electrons); sound speed is `√(p'/inertia)`.
pub fn wave_speed_mu_species(
    left: &CellState,
    right: &CellState,
    law: &PressureLaw,
    inertia: f64,
) -> Result<WaveSpeedEstimate> {
    check_cell(left)?;
    check_cell(right)?;
    if !(inertia > 0.0) {
        return Err(CoreError::InvalidScheme(format!("inertia must be positive, got {inertia}")));
    }
    Ok(wave_speed_unchecked(left, right, law, inertia))
}

/// Flux with the momentum components multiplied by `inertia`, viscosity included.
#[inline]
pub(crate) fn llf_weighted(
    left: &CellState,
    right: &CellState,
    mu: f64,
    law: &PressureLaw,
    inertia: f64,
) -> InterfaceFlux {
    let (ul, ur) = (left.ux(), right.ux());
    let f_n = 0.5 * (left.qx + right.qx + mu * (left.n - right.n));
    let f_ux = 0.5
        * (inertia * left.qx * ul + law.p(left.n) + inertia * right.qx * ur + law.p(right.n)
            + inertia * mu * (left.qx - right.qx));
    let f_uy = 0.5 * inertia * (left.qy * ul + right.qy * ur + mu * (left.qy - right.qy));
    InterfaceFlux { f_n, f_ux, f_uy }
}

pub fn llf_flux_onefluid(left: &CellState, right: &CellState, mu: f64, law: &PressureLaw) -> InterfaceFlux {
    llf_weighted(left, right, mu, law, 1.0)
}

/// Ion fluxes have the one-fluid form; electron momentum fluxes carry `eps2`
/// on the convective part and on the viscous part.
pub fn llf_flux_twofluid(
    species: Species,
    left: &CellState,
    right: &CellState,
    mu: f64,
    law: &PressureLaw,
    eps2: f64,
) -> InterfaceFlux {
    match species {
        Species::Ion => llf_weighted(left, right, mu, law, 1.0),
        Species::Electron => llf_weighted(left, right, mu, law, eps2),
    }
}

/// Analytic flux `(n u_x, n u_x² + p, n u_x u_y)`.
pub fn exact_flux(c: &CellState, law: &PressureLaw) -> InterfaceFlux {
    let u = c.ux();
    InterfaceFlux { f_n: c.qx, f_ux: c.qx * u + law.p(c.n), f_uy: c.qy * u }
}

/// Data around interface `k+1/2` entering the implicit mass flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImplicitFluxStencil {
    /// Explicit mass flux at `k+1/2`.
    pub f_n: f64,
    pub n_left: f64,
    pub n_right: f64,
    /// `E_x^{m+1}` at `k+1/2`.
    pub ex_new: f64,
    /// x-momentum flux at `k-1/2`.
    pub f_ux_prev: f64,
    /// x-momentum flux at `k+3/2`.
    pub f_ux_next: f64,
    pub qy_left: f64,
    pub qy_right: f64,
    /// `B_z^m` at `k+1/2`.
    pub bz: f64,
}

pub fn implicit_mass_flux_onefluid(s: &ImplicitFluxStencil, delta: f64, h: f64) -> f64 {
    s.f_n
        - 0.5 * delta * (s.n_right + s.n_left) * s.ex_new
        - delta / (2.0 * h) * (s.f_ux_next - s.f_ux_prev)
        - 0.5 * delta * (s.qy_left + s.qy_right) * s.bz
}

/// Ion (+) and electron (-, scaled by `1/eps2`) implicit mass fluxes. For electrons
/// `f_ux_*` are the ε²-weighted momentum fluxes.
pub fn implicit_mass_flux_twofluid(species: Species, s: &ImplicitFluxStencil, delta: f64, h: f64, eps2: f64) -> f64 {
    match species {
        Species::Ion => {
            s.f_n + 0.5 * delta * (s.n_left + s.n_right) * s.ex_new
                - delta / (2.0 * h) * (s.f_ux_next - s.f_ux_prev)
                + 0.5 * delta * (s.qy_left + s.qy_right) * s.bz
        }
        Species::Electron => {
            s.f_n
                - delta / (2.0 * eps2) * (s.n_left + s.n_right) * s.ex_new
                - delta / (2.0 * h * eps2) * (s.f_ux_next - s.f_ux_prev)
                - delta / (2.0 * eps2) * (s.qy_left + s.qy_right) * s.bz
        }
    }
}

/// Largest interface viscosity over all interfaces, boundary ones included.
pub fn max_wave_speed(state: &FluidState, law: &PressureLaw, inertia: f64, bc: FluidBc) -> Result<f64> {
    let ext = extend_with_ghosts(state, bc);
    let mut mu_max: f64 = 0.0;
    for e in (GHOSTS - 1)..(GHOSTS + state.len()) {
        let (l, r) = (ext.cell(e), ext.cell(e + 1));
        check_cell(&l)?;
        check_cell(&r)?;
        mu_max = mu_max.max(wave_speed_unchecked(&l, &r, law, inertia).mu);
    }
    Ok(mu_max)
}

/// `cfl·h/μ_max` for the AP scheme, `cfl·h/max(μ_max, 1/λ)` for the classical one.
pub fn cfl_timestep_from_mu(mu_max: f64, h: f64, cfl: f64, lambda: f64, kind: SchemeKind) -> Result<f64> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(CoreError::InvalidScheme(format!("cfl must lie in (0, 1], got {cfl}")));
    }
    let speed = match kind {
        SchemeKind::Ap => mu_max,
        SchemeKind::Classical => {
            if !(lambda > 0.0) {
                return Err(CoreError::InvalidScheme(
                    "classical scheme needs lambda > 0 (light speed 1/lambda)".into(),
                ));
            }
            mu_max.max(1.0 / lambda)
        }
    };
    if !(speed > 0.0 && speed.is_finite()) {
        return Err(CoreError::Numerical(format!("invalid maximal wave speed {speed}")));
    }
    Ok(cfl * h / speed)
}

/// Time step for a set of species given as `(state, inertia)` pairs.
pub fn cfl_timestep(
    species: &[(&FluidState, f64)],
    law: &PressureLaw,
    bc: FluidBc,
    h: f64,
    cfl: f64,
    lambda: f64,
    kind: SchemeKind,
) -> Result<f64> {
    let mut mu_max: f64 = 0.0;
    for (state, inertia) in species {
        mu_max = mu_max.max(max_wave_speed(state, law, *inertia, bc)?);
    }
    cfl_timestep_from_mu(mu_max, h, cfl, lambda, kind)
}
