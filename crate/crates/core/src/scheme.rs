//! Scheme configuration and the species-generic time update shared by the
//! one-fluid and two-fluid drivers.
//!
//! A species carries a charge sign `Z` (+1 ions, -1 electrons) and an inertia
//! coefficient `m` (1, or ε² for electrons). Its momentum equation reads
//! `m(∂_t q + ∂_x(q u)) + ∂_x p = Z n (E + u × B)`, Ampère's law is driven by the
//! current `Σ Z q` and Gauss's law by `n_background + Σ Z n`.

use crate::boundary::{extend_with_ghosts, ey_closures, BoundaryConditionSpec, EyClosure};
use crate::error::{CoreError, Result};
use crate::flux::{llf_weighted, wave_speed_unchecked, SchemeKind};
use crate::pressure::PressureLaw;
use crate::state::{EMField, FluidState, DENSITY_FLOOR};
use crate::tridiag::{solve_ey_elliptic, TridiagonalSystem};

/// Right-hand side used for the implicit `E_y` rows of the AP scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EySystem {
    /// Magnetic field and current at `t^m` on the right-hand side.
    #[default]
    Current,
    /// `λ²(2E_y^m - E_y^{m-1})` replaces the field and current terms; falls back to
    /// `Current` on the first step.
    History,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub kind: SchemeKind,
    pub lambda: f64,
    pub eps2: f64,
    pub pressure: PressureLaw,
    pub cfl: f64,
    pub ey_system: EySystem,
    pub density_floor: f64,
    /// Cells whose density does not exceed this value lose their momentum after a
    /// step. Zero disables the rule.
    pub vacuum_density: f64,
}

impl SchemeConfig {
    pub fn new(kind: SchemeKind, lambda: f64) -> Self {
        Self {
            kind,
            lambda,
            eps2: 1e-4,
            pressure: PressureLaw::default(),
            cfl: 0.5,
            ey_system: EySystem::Current,
            density_floor: DENSITY_FLOOR,
            vacuum_density: 0.0,
        }
    }

    pub fn classical(lambda: f64) -> Self {
        Self::new(SchemeKind::Classical, lambda)
    }

    pub fn ap(lambda: f64) -> Self {
        Self::new(SchemeKind::Ap, lambda)
    }

    /// Only `(0,0,1)` and `(1,1,1)` are full PDE schemes.
    pub fn from_triple(a: u8, b: u8, c: u8, lambda: f64) -> Result<Self> {
        match (a, b, c) {
            (0, 0, 1) => Ok(Self::classical(lambda)),
            (1, 1, 1) => Ok(Self::ap(lambda)),
            _ => Err(CoreError::InvalidScheme(format!(
                "({a},{b},{c}) is not implemented as a time update; use (0,0,1) or (1,1,1)"
            ))),
        }
    }

    pub fn triple(&self) -> (u8, u8, u8) {
        match self.kind {
            SchemeKind::Classical => (0, 0, 1),
            SchemeKind::Ap => (1, 1, 1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(CoreError::InvalidScheme(format!("lambda must be finite and >= 0, got {}", self.lambda)));
        }
        if self.kind == SchemeKind::Classical && self.lambda == 0.0 {
            return Err(CoreError::InvalidScheme(
                "lambda = 0 requires the AP scheme; the classical recursion does not close".into(),
            ));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(CoreError::InvalidScheme(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !(self.eps2 > 0.0 && self.eps2.is_finite()) {
            return Err(CoreError::InvalidScheme(format!("eps2 must be positive, got {}", self.eps2)));
        }
        if !(self.density_floor > 0.0) {
            return Err(CoreError::InvalidScheme("density floor must be positive".into()));
        }
        match self.pressure {
            PressureLaw::Isothermal { t } if !(t > 0.0) => {
                Err(CoreError::InvalidScheme(format!("temperature must be positive, got {t}")))
            }
            PressureLaw::Polytropic { c, gamma } if !(c > 0.0 && gamma > 0.0) => {
                Err(CoreError::InvalidScheme("polytropic constants must be positive".into()))
            }
            _ => Ok(()),
        }
    }
}

pub(crate) struct SpeciesMut<'a> {
    pub state: &'a mut FluidState,
    pub charge: f64,
    pub inertia: f64,
}

/// Ghost-extended state and fluxes of one species. Flux index `j + 1` holds
/// interface `j` for `j = -1 ..= n_cells + 1`; extended cell `k + 2` holds cell `k`.
struct SpeciesFluxes {
    ext: FluidState,
    f_n: Vec<f64>,
    f_x: Vec<f64>,
    f_y: Vec<f64>,
}

fn species_fluxes(state: &FluidState, law: &PressureLaw, inertia: f64, bc: &BoundaryConditionSpec) -> SpeciesFluxes {
    let ext = extend_with_ghosts(state, bc.fluid);
    let m = state.len() + 3;
    let (mut f_n, mut f_x, mut f_y) = (Vec::with_capacity(m), Vec::with_capacity(m), Vec::with_capacity(m));
    for i in 0..m {
        let (l, r) = (ext.cell(i), ext.cell(i + 1));
        let mu = wave_speed_unchecked(&l, &r, law, inertia).mu;
        let f = llf_weighted(&l, &r, mu, law, inertia);
        f_n.push(f.f_n);
        f_x.push(f.f_ux);
        f_y.push(f.f_uy);
    }
    SpeciesFluxes { ext, f_n, f_x, f_y }
}

pub(crate) struct StepContext<'a> {
    pub h: f64,
    pub delta: f64,
    /// Time at level `m`.
    pub t: f64,
    pub cfg: &'a SchemeConfig,
    pub bc: &'a BoundaryConditionSpec,
    pub ey_prev: Option<&'a [f64]>,
}

fn ghost_pair(cl: &EyClosure, cr: &EyClosure, ey: &[f64]) -> (f64, f64) {
    let n = ey.len();
    (cl.ghost(ey[0], ey[n - 1]), cr.ghost(ey[n - 1], ey[0]))
}

fn faraday(bz: &[f64], ey: &[f64], ghosts: (f64, f64), delta: f64, h: f64) -> Vec<f64> {
    let n = ey.len();
    let r = delta / h;
    (0..=n)
        .map(|j| {
            let right = if j == n { ghosts.1 } else { ey[j] };
            let left = if j == 0 { ghosts.0 } else { ey[j - 1] };
            bz[j] - r * (right - left)
        })
        .collect()
}

fn finish(species: &mut [SpeciesMut], em: &EMField, cfg: &SchemeConfig) -> Result<()> {
    for sp in species.iter_mut() {
        let s = &mut *sp.state;
        for k in 0..s.n.len() {
            if s.n[k] < cfg.density_floor {
                s.n[k] = cfg.density_floor;
            }
            if s.n[k] <= cfg.vacuum_density {
                s.qx[k] = 0.0;
                s.qy[k] = 0.0;
            }
        }
        if !s.is_finite() {
            return Err(CoreError::Numerical("non-finite fluid state after step".into()));
        }
    }
    if !em.is_finite() {
        return Err(CoreError::Numerical("non-finite field after step".into()));
    }
    Ok(())
}

/// Classical update: mass, Faraday with `E_y^m`, Ampère x and y, momenta with
/// the new fields and the new density in the Lorentz force.
pub(crate) fn advance_classical(species: &mut [SpeciesMut], em: &mut EMField, ctx: &StepContext) -> Result<()> {
    let cfg = ctx.cfg;
    let (h, d) = (ctx.h, ctx.delta);
    let lam2 = cfg.lambda * cfg.lambda;
    if !(lam2 > 0.0) {
        return Err(CoreError::InvalidScheme("classical scheme needs lambda > 0".into()));
    }
    let n = em.n_cells();
    let fl: Vec<SpeciesFluxes> = species
        .iter()
        .map(|sp| species_fluxes(sp.state, &cfg.pressure, sp.inertia, ctx.bc))
        .collect();

    let new_n: Vec<Vec<f64>> = species
        .iter()
        .zip(&fl)
        .map(|(sp, f)| (0..n).map(|k| sp.state.n[k] - d / h * (f.f_n[k + 2] - f.f_n[k + 1])).collect())
        .collect();

    let (cl, cr) = ey_closures(&ctx.bc.em, cfg.lambda, 0.5 * d / h, em.bz[0], em.bz[n], ctx.bc.incident_at(ctx.t));
    let bz_new = faraday(&em.bz, &em.ey, ghost_pair(&cl, &cr, &em.ey), d, h);

    let ex_new: Vec<f64> = (0..=n)
        .map(|j| {
            let current: f64 = species.iter().zip(&fl).map(|(sp, f)| sp.charge * f.f_n[j + 1]).sum();
            em.ex[j] - d / lam2 * current
        })
        .collect();

    let ey_new: Vec<f64> = (0..n)
        .map(|k| {
            let current: f64 = species.iter().map(|sp| sp.charge * sp.state.qy[k]).sum();
            em.ey[k] + d / lam2 * (-current - (bz_new[k + 1] - bz_new[k]) / h)
        })
        .collect();

    for ((sp, f), nn) in species.iter_mut().zip(&fl).zip(new_n) {
        let s = &mut *sp.state;
        let (z, m) = (sp.charge, sp.inertia);
        for k in 0..n {
            let ext_k = 0.5 * (ex_new[k] + ex_new[k + 1]);
            let bt_k = 0.5 * (em.bz[k] + em.bz[k + 1]);
            let (qx, qy) = (s.qx[k], s.qy[k]);
            s.qx[k] = qx - d / (h * m) * (f.f_x[k + 2] - f.f_x[k + 1]) + d * z / m * (nn[k] * ext_k + qy * bt_k);
            s.qy[k] = qy - d / (h * m) * (f.f_y[k + 2] - f.f_y[k + 1]) + d * z / m * (nn[k] * ey_new[k] - qx * bt_k);
        }
        s.n = nn;
    }
    em.ex = ex_new;
    em.ey = ey_new;
    em.bz = bz_new;
    finish(species, em, cfg)
}

/// Assemble the implicit `E_y` rows of the AP update with boundary closures folded in.
fn assemble_ey_system(
    species: &[SpeciesMut],
    fl: &[SpeciesFluxes],
    em: &EMField,
    ctx: &StepContext,
    closures: (EyClosure, EyClosure),
) -> TridiagonalSystem {
    let cfg = ctx.cfg;
    let (h, d) = (ctx.h, ctx.delta);
    let lam2 = cfg.lambda * cfg.lambda;
    let n = em.n_cells();
    let off = -d * d / (h * h);
    let history = match (cfg.ey_system, ctx.ey_prev) {
        (EySystem::History, Some(prev)) if prev.len() == n => Some(prev),
        _ => None,
    };
    let mut main = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for k in 0..n {
        let bt_k = 0.5 * (em.bz[k] + em.bz[k + 1]);
        let mut stiff = 0.0;
        let mut flux_term = 0.0;
        let mut lorentz = 0.0;
        let mut current = 0.0;
        for (sp, f) in species.iter().zip(fl) {
            let s = &*sp.state;
            stiff += s.n[k] / sp.inertia;
            flux_term += sp.charge / sp.inertia * (f.f_y[k + 2] - f.f_y[k + 1]);
            lorentz += s.qx[k] / sp.inertia;
            current += sp.charge * s.qy[k];
        }
        main.push(lam2 + d * d * stiff - 2.0 * off);
        let base = match history {
            Some(prev) => lam2 * (2.0 * em.ey[k] - prev[k]),
            None => lam2 * em.ey[k] - d * current - d / h * (em.bz[k + 1] - em.bz[k]),
        };
        rhs.push(base + d * d / h * flux_term + d * d * lorentz * bt_k);
    }
    let mut sys = TridiagonalSystem { sub: vec![off; n], main, sup: vec![off; n], rhs, periodic: false };
    match closures {
        (EyClosure::Periodic, _) | (_, EyClosure::Periodic) => sys.periodic = true,
        (EyClosure::Linear { alpha: al, beta: bl }, EyClosure::Linear { alpha: ar, beta: br }) => {
            sys.main[0] += off * al;
            sys.rhs[0] -= off * bl;
            sys.main[n - 1] += off * ar;
            sys.rhs[n - 1] -= off * br;
        }
    }
    sys
}

/// AP update: implicit `E_y`, pointwise `E_x`, Faraday with `E_y^{m+1}`, momenta
/// with the old density in the Lorentz force, densities with the implicit mass flux.
pub(crate) fn advance_ap(species: &mut [SpeciesMut], em: &mut EMField, ctx: &StepContext) -> Result<()> {
    let cfg = ctx.cfg;
    let (h, d) = (ctx.h, ctx.delta);
    let lam2 = cfg.lambda * cfg.lambda;
    let n = em.n_cells();
    let fl: Vec<SpeciesFluxes> = species
        .iter()
        .map(|sp| species_fluxes(sp.state, &cfg.pressure, sp.inertia, ctx.bc))
        .collect();

    let closures = ey_closures(&ctx.bc.em, cfg.lambda, d / h, em.bz[0], em.bz[n], ctx.bc.incident_at(ctx.t + d));
    let sys = assemble_ey_system(species, &fl, em, ctx, closures);
    let ey_new = solve_ey_elliptic(&sys)?;

    // E_x and implicit mass fluxes. The last species' flux is taken from the
    // Ampère identity so the discrete Gauss law holds to rounding.
    let ns = species.len();
    let mut ex_new = Vec::with_capacity(n + 1);
    let mut ftilde = vec![Vec::with_capacity(n + 1); ns];
    let mut r = vec![0.0; ns];
    let mut nsum = vec![0.0; ns];
    for j in 0..=n {
        let mut s_tot = 0.0;
        let mut n_tot = 0.0;
        for (i, (sp, f)) in species.iter().zip(&fl).enumerate() {
            let m = sp.inertia;
            nsum[i] = f.ext.n[j + 1] + f.ext.n[j + 2];
            r[i] = f.f_n[j + 1] - d / (2.0 * h * m) * (f.f_x[j + 2] - f.f_x[j])
                + d * sp.charge / (2.0 * m) * (f.ext.qy[j + 1] + f.ext.qy[j + 2]) * em.bz[j];
            s_tot -= sp.charge * r[i];
            n_tot += nsum[i] / m;
        }
        let denom = lam2 + 0.5 * d * d * n_tot;
        let g = (s_tot - 0.5 * d * n_tot * em.ex[j]) / denom;
        let e = em.ex[j] + d * g;
        ex_new.push(e);
        let mut others = 0.0;
        for (i, sp) in species.iter().enumerate().take(ns - 1) {
            let ft = r[i] + d * sp.charge / (2.0 * sp.inertia) * nsum[i] * e;
            others += sp.charge * ft;
            ftilde[i].push(ft);
        }
        ftilde[ns - 1].push((-lam2 * g - others) / species[ns - 1].charge);
    }

    let bz_new = faraday(&em.bz, &ey_new, ghost_pair(&closures.0, &closures.1, &ey_new), d, h);

    for ((sp, f), ft) in species.iter_mut().zip(&fl).zip(&ftilde) {
        let s = &mut *sp.state;
        let (z, m) = (sp.charge, sp.inertia);
        for k in 0..n {
            let ext_k = 0.5 * (ex_new[k] + ex_new[k + 1]);
            let bt_k = 0.5 * (em.bz[k] + em.bz[k + 1]);
            let (nk, qx, qy) = (s.n[k], s.qx[k], s.qy[k]);
            s.qx[k] = qx - d / (h * m) * (f.f_x[k + 2] - f.f_x[k + 1]) + d * z / m * (nk * ext_k + qy * bt_k);
            s.qy[k] = qy - d / (h * m) * (f.f_y[k + 2] - f.f_y[k + 1]) + d * z / m * (nk * ey_new[k] - qx * bt_k);
            s.n[k] = nk - d / h * (ft[k + 1] - ft[k]);
        }
    }
    em.ex = ex_new;
    em.ey = ey_new;
    em.bz = bz_new;
    finish(species, em, cfg)
}

pub(crate) fn advance(species: &mut [SpeciesMut], em: &mut EMField, ctx: &StepContext) -> Result<()> {
    ctx.cfg.validate()?;
    ctx.bc.validate()?;
    if !(ctx.delta > 0.0 && ctx.delta.is_finite()) {
        return Err(CoreError::InvalidScheme(format!("time step must be positive, got {}", ctx.delta)));
    }
    let n = em.n_cells();
    for sp in species.iter() {
        if sp.state.len() != n {
            return Err(CoreError::LengthMismatch { expected: n, got: sp.state.len() });
        }
    }
    match ctx.cfg.kind {
        SchemeKind::Classical => advance_classical(species, em, ctx),
        SchemeKind::Ap => advance_ap(species, em, ctx),
    }
}
