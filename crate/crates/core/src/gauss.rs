//! Discrete Gauss law: residuals and initialization of `E_x`.

use crate::error::{CoreError, Result};
use crate::state::{EMField, FluidState};

/// `λ²h⁻¹(E_x|_{k+1/2} - E_x|_{k-1/2}) - ρ_k` for a given charge density.
pub fn gauss_residual_from_charge(charge: &[f64], ex: &[f64], lambda: f64, h: f64) -> Result<Vec<f64>> {
    if ex.len() != charge.len() + 1 {
        return Err(CoreError::LengthMismatch { expected: charge.len() + 1, got: ex.len() });
    }
    let l2h = lambda * lambda / h;
    Ok(charge
        .iter()
        .enumerate()
        .map(|(k, rho)| l2h * (ex[k + 1] - ex[k]) - rho)
        .collect())
}

/// One-fluid residual with the uniform ion background `1`.
pub fn gauss_residual(fluid: &FluidState, em: &EMField, lambda: f64, h: f64) -> Result<Vec<f64>> {
    let charge: Vec<f64> = fluid.n.iter().map(|n| 1.0 - n).collect();
    gauss_residual_from_charge(&charge, &em.ex, lambda, h)
}

/// One-fluid residual with a static ion background profile.
pub fn gauss_residual_with_background(
    fluid: &FluidState,
    background: &[f64],
    em: &EMField,
    lambda: f64,
    h: f64,
) -> Result<Vec<f64>> {
    if background.len() != fluid.len() {
        return Err(CoreError::LengthMismatch { expected: fluid.len(), got: background.len() });
    }
    let charge: Vec<f64> = background.iter().zip(&fluid.n).map(|(b, n)| b - n).collect();
    gauss_residual_from_charge(&charge, &em.ex, lambda, h)
}

/// Two-species residual with charge `n_i - n_e`.
pub fn gauss_residual_2f(ion: &FluidState, electron: &FluidState, em: &EMField, lambda: f64, h: f64) -> Result<Vec<f64>> {
    if ion.len() != electron.len() {
        return Err(CoreError::LengthMismatch { expected: ion.len(), got: electron.len() });
    }
    let charge: Vec<f64> = ion.n.iter().zip(&electron.n).map(|(i, e)| i - e).collect();
    gauss_residual_from_charge(&charge, &em.ex, lambda, h)
}

/// Cumulative sum `E_x|_{k+1/2} = E_x|_{k-1/2} + (h/λ²)ρ_k` from `anchor` at the left end.
pub fn init_ex_from_charge(charge: &[f64], lambda: f64, h: f64, anchor: f64) -> Result<Vec<f64>> {
    let mut ex = Vec::with_capacity(charge.len() + 1);
    ex.push(anchor);
    if lambda == 0.0 {
        if let Some(rho) = charge.iter().find(|r| r.abs() > 1e-12) {
            return Err(CoreError::InconsistentInitialData(format!(
                "lambda = 0 requires neutral data, found charge density {rho}"
            )));
        }
        ex.extend(std::iter::repeat_n(anchor, charge.len()));
        return Ok(ex);
    }
    let s = h / (lambda * lambda);
    let mut acc = anchor;
    for rho in charge {
        acc += s * rho;
        ex.push(acc);
    }
    Ok(ex)
}

/// One-fluid initialization with uniform background `1`.
pub fn init_ex_from_gauss(fluid: &FluidState, lambda: f64, h: f64, anchor: f64) -> Result<Vec<f64>> {
    let charge: Vec<f64> = fluid.n.iter().map(|n| 1.0 - n).collect();
    init_ex_from_charge(&charge, lambda, h, anchor)
}
