//! Growth-factor scans over the admissible wave numbers and stability tables.

use std::io::Write;

use rayon::prelude::*;

use crate::characteristic::{em_polynomial_shifted, es_polynomial_shifted, StabilityConfig, Triple};
use crate::error::{Result, StabilityError};
use crate::polynomial::polynomial_roots;

/// Growth factors up to this tolerance above 1 count as stable.
pub const STABLE_TOL: f64 = 1e-9;

/// Default number of uniform samples on `[0, π/h]`.
pub const DEFAULT_XI_SAMPLES: usize = 2049;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub h: f64,
    pub gamma: f64,
    pub t: f64,
    pub n_xi: usize,
}

impl ModelParams {
    /// `γ = √T/2`, the LLF viscosity of the linearized system.
    pub fn with_default_gamma(h: f64, t: f64) -> Self {
        Self { h, gamma: 0.5 * t.sqrt(), t, n_xi: DEFAULT_XI_SAMPLES }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthReport {
    pub max_growth: f64,
    pub xi_at_max: f64,
    /// True when the maximum comes from the electrostatic polynomial.
    pub electrostatic: bool,
}

fn max_shifted_modulus(z: &[f64]) -> Result<f64> {
    let roots = polynomial_roots(z)?;
    Ok(roots.roots.iter().map(|z| (1.0 + 2.0 * z.re + z.norm_sqr()).max(0.0).sqrt()).fold(0.0, f64::max))
}

/// Largest root modulus of the electromagnetic and electrostatic polynomials at
/// one wave number. Roots are computed in `z = q − 1` so that `|q| − 1` keeps
/// its relative accuracy when roots cluster around 1.
pub fn growth_at(cfg: &StabilityConfig) -> Result<(f64, f64)> {
    let em = max_shifted_modulus(&em_polynomial_shifted(cfg))?;
    let es = max_shifted_modulus(&es_polynomial_shifted(cfg))?;
    Ok((em, es))
}

/// Maximum over `n_xi` uniform samples of `ξ ∈ [0, π/h]` of the largest root modulus.
pub fn max_growth_factor(triple: Triple, lambda: f64, delta: f64, p: &ModelParams) -> Result<GrowthReport> {
    if p.n_xi < 2 {
        return Err(StabilityError::InvalidConfig(format!("need at least 2 xi samples, got {}", p.n_xi)));
    }
    let xi_max = std::f64::consts::PI / p.h;
    let samples: Vec<GrowthReport> = (0..p.n_xi)
        .into_par_iter()
        .map(|j| {
            let xi = xi_max * j as f64 / (p.n_xi - 1) as f64;
            let cfg = StabilityConfig { triple, lambda, delta, h: p.h, gamma: p.gamma, t: p.t, xi };
            cfg.validate()?;
            let (em, es) = growth_at(&cfg)?;
            let (g, is_es) = if es > em { (es, true) } else { (em, false) };
            Ok(GrowthReport { max_growth: g, xi_at_max: xi, electrostatic: is_es })
        })
        .collect::<Result<_>>()?;
    // first strict maximum in ξ order, independent of thread scheduling
    let mut best = GrowthReport { max_growth: 0.0, xi_at_max: 0.0, electrostatic: false };
    for r in samples {
        if r.max_growth > best.max_growth {
            best = r;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityRow {
    pub triple: Triple,
    pub lambda: f64,
    pub dt_over_h: f64,
    pub max_growth: f64,
    pub stable: bool,
}

/// One row per `(λ, δ/h)` pair, `λ` outermost.
pub fn stability_region_scan(
    triple: Triple,
    lambdas: &[f64],
    dt_over_h: &[f64],
    p: &ModelParams,
) -> Result<Vec<StabilityRow>> {
    let mut rows = Vec::with_capacity(lambdas.len() * dt_over_h.len());
    for &lambda in lambdas {
        for &r in dt_over_h {
            let g = max_growth_factor(triple, lambda, r * p.h, p)?.max_growth;
            rows.push(StabilityRow { triple, lambda, dt_over_h: r, max_growth: g, stable: g <= 1.0 + STABLE_TOL });
        }
    }
    Ok(rows)
}

fn stable_for_all(triple: Triple, lambdas: &[f64], ratio: f64, p: &ModelParams) -> Result<bool> {
    for &lambda in lambdas {
        if max_growth_factor(triple, lambda, ratio * p.h, p)?.max_growth > 1.0 + STABLE_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest `Γ = δ/h` in `[lo, hi]`, to within `tol`, for which every `λ` in the
/// list is stable. `lo` must be stable; returns `hi` if it is stable too.
pub fn bisect_stability_limit(
    triple: Triple,
    lambdas: &[f64],
    lo: f64,
    hi: f64,
    tol: f64,
    p: &ModelParams,
) -> Result<f64> {
    if !(lo > 0.0 && hi > lo && tol > 0.0) {
        return Err(StabilityError::InvalidConfig(format!("bad bracket [{lo}, {hi}] / tol {tol}")));
    }
    if !stable_for_all(triple, lambdas, lo, p)? {
        return Err(StabilityError::InvalidConfig(format!("lower bracket {lo} is not stable")));
    }
    if stable_for_all(triple, lambdas, hi, p)? {
        return Ok(hi);
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if stable_for_all(triple, lambdas, mid, p)? {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(a)
}

/// CSV with header `a,b,c,lambda,dt_over_h,max_growth,stable`.
pub fn write_stability_csv<W: Write>(rows: &[StabilityRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "a,b,c,lambda,dt_over_h,max_growth,stable")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{:.16e},{:.16e},{:.16e},{}",
            r.triple.a, r.triple.b, r.triple.c, r.lambda, r.dt_over_h, r.max_growth, r.stable
        )?;
    }
    Ok(())
}
