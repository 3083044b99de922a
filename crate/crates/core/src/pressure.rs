use crate::error::{CoreError, Result};

/// Barotropic pressure law `p = p(n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PressureLaw {
    Isothermal { t: f64 },
    Polytropic { c: f64, gamma: f64 },
}

impl Default for PressureLaw {
    fn default() -> Self {
        PressureLaw::Isothermal { t: 1.0 }
    }
}

impl PressureLaw {
    /// Pressure without domain checks; callers guarantee `n > 0`.
    #[inline]
    pub fn p(&self, n: f64) -> f64 {
        match *self {
            PressureLaw::Isothermal { t } => t * n,
            PressureLaw::Polytropic { c, gamma } => c * n.powf(gamma),
        }
    }

    #[inline]
    pub fn dp(&self, n: f64) -> f64 {
        match *self {
            PressureLaw::Isothermal { t } => t,
            PressureLaw::Polytropic { c, gamma } => c * gamma * n.powf(gamma - 1.0),
        }
    }

    /// Linearization constant `p'(1)`.
    pub fn linear_t(&self) -> f64 {
        self.dp(1.0)
    }
}

pub fn pressure_eval(law: &PressureLaw, n: f64) -> Result<(f64, f64)> {
    if !n.is_finite() {
        return Err(CoreError::NonFinite("density"));
    }
    if n <= 0.0 {
        return Err(CoreError::NonPositiveDensity(n));
    }
    Ok((law.p(n), law.dp(n)))
}

pub fn sound_speed(law: &PressureLaw, n: f64) -> Result<f64> {
    let (_, dp) = pressure_eval(law, n)?;
    Ok(dp.max(0.0).sqrt())
}
