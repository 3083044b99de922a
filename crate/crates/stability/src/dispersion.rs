//! Continuous dispersion relation of the linearized Euler-Maxwell system for
//! modes `e^{-st}`.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionModes {
    /// `±(i/λ)(1+|ξ|²)^{1/2}`, transverse polarization.
    pub em: [Complex64; 2],
    /// `±(i/λ)(1+Tλ²|ξ|²)^{1/2}`, longitudinal polarization.
    pub es: [Complex64; 2],
}

impl DispersionModes {
    pub fn is_infinite(&self) -> bool {
        self.em.iter().chain(&self.es).any(|s| s.im.is_infinite())
    }
}

/// At `λ = 0` both frequencies are reported as `±i∞`.
pub fn dispersion_modes(lambda: f64, t: f64, xi: f64) -> DispersionModes {
    let x2 = xi * xi;
    if lambda == 0.0 {
        let inf = Complex64::new(0.0, f64::INFINITY);
        return DispersionModes { em: [inf, -inf], es: [inf, -inf] };
    }
    let w_em = (1.0 + x2).sqrt() / lambda;
    let w_es = (1.0 + t * lambda * lambda * x2).sqrt() / lambda;
    DispersionModes {
        em: [Complex64::new(0.0, w_em), Complex64::new(0.0, -w_em)],
        es: [Complex64::new(0.0, w_es), Complex64::new(0.0, -w_es)],
    }
}
