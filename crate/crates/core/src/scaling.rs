//! Physical units and the dimensionless scaling of the one-fluid system.

use crate::error::{CoreError, Result};

pub const EPSILON_0: f64 = 8.8541878128e-12;
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;
pub const BOLTZMANN: f64 = 1.380649e-23;
pub const ELECTRON_MASS: f64 = 9.1093837015e-31;
pub const ATOMIC_MASS_UNIT: f64 = 1.66053906660e-27;
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Temperature {
    Kelvin(f64),
    ElectronVolt(f64),
}

impl Temperature {
    /// Thermal energy `k_B T` in joules.
    pub fn energy(&self) -> f64 {
        match *self {
            Temperature::Kelvin(t) => BOLTZMANN * t,
            Temperature::ElectronVolt(t) => ELEMENTARY_CHARGE * t,
        }
    }

    pub fn kelvin(&self) -> f64 {
        self.energy() / BOLTZMANN
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    Length,
    Time,
    Velocity,
    Density,
    ElectricField,
    MagneticField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingUnits {
    pub x0: f64,
    pub n0: f64,
    pub t0_kelvin: f64,
    pub thermal_energy: f64,
    pub mass: f64,
    pub u0: f64,
    pub t0: f64,
    pub e0: f64,
    pub b0: f64,
    /// `u0 / c`.
    pub alpha: f64,
    pub beta: f64,
    pub lambda: f64,
}

pub fn compute_scaling(x0: f64, n0: f64, temperature: Temperature, mass: f64) -> Result<ScalingUnits> {
    let kt = temperature.energy();
    for (v, name) in [(x0, "x0"), (n0, "n0"), (kt, "T0"), (mass, "mass")] {
        if !v.is_finite() {
            return Err(CoreError::NonFinite(name));
        }
        if v <= 0.0 {
            return Err(CoreError::InvalidScheme(format!("{name} must be positive, got {v}")));
        }
    }
    let u0 = (kt / mass).sqrt();
    let t0 = x0 / u0;
    let e0 = kt / (ELEMENTARY_CHARGE * x0);
    let b0 = e0 / u0;
    let lambda = (EPSILON_0 * kt / (ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * n0 * x0 * x0)).sqrt();
    Ok(ScalingUnits {
        x0,
        n0,
        t0_kelvin: kt / BOLTZMANN,
        thermal_energy: kt,
        mass,
        u0,
        t0,
        e0,
        b0,
        alpha: u0 / SPEED_OF_LIGHT,
        beta: (u0 * b0 / e0).sqrt(),
        lambda,
    })
}

impl ScalingUnits {
    pub fn unit(&self, q: Quantity) -> f64 {
        match q {
            Quantity::Length => self.x0,
            Quantity::Time => self.t0,
            Quantity::Velocity => self.u0,
            Quantity::Density => self.n0,
            Quantity::ElectricField => self.e0,
            Quantity::MagneticField => self.b0,
        }
    }

    pub fn to_physical(&self, q: Quantity, value: f64) -> f64 {
        value * self.unit(q)
    }

    pub fn to_dimensionless(&self, q: Quantity, value: f64) -> f64 {
        value / self.unit(q)
    }
}
