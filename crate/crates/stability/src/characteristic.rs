//! Amplification polynomials of the linearized viscous semi-discrete schemes.

use crate::error::{Result, StabilityError};
use crate::polynomial::{poly_add, poly_mul, poly_scale, Coefficients};

/// Implicitness flags: `a` for the velocity in the mass and Ampère equations,
/// `b` for `E` in Faraday, `c` for `B` in Ampère.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub a: u8,
    pub b: u8,
    pub c: u8,
}

impl Triple {
    pub const CLASSICAL: Triple = Triple { a: 0, b: 0, c: 1 };
    pub const AP: Triple = Triple { a: 1, b: 1, c: 1 };
    /// All eight combinations.
    pub const ALL: [Triple; 8] = [
        Triple { a: 0, b: 0, c: 0 },
        Triple { a: 0, b: 0, c: 1 },
        Triple { a: 0, b: 1, c: 0 },
        Triple { a: 0, b: 1, c: 1 },
        Triple { a: 1, b: 0, c: 0 },
        Triple { a: 1, b: 0, c: 1 },
        Triple { a: 1, b: 1, c: 0 },
        Triple { a: 1, b: 1, c: 1 },
    ];

    pub fn new(a: u8, b: u8, c: u8) -> Result<Self> {
        if a > 1 || b > 1 || c > 1 {
            return Err(StabilityError::InvalidConfig(format!("flags must be 0 or 1, got ({a},{b},{c})")));
        }
        Ok(Self { a, b, c })
    }

    pub fn d(&self) -> usize {
        (self.b + self.c) as usize
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl std::str::FromStr for Triple {
    type Err = StabilityError;

    /// Parses `a,b,c`, optionally in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(StabilityError::InvalidConfig(format!("expected a,b,c, got {s:?}")));
        }
        let mut v = [0u8; 3];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| StabilityError::InvalidConfig(format!("bad flag {p:?}")))?;
        }
        Triple::new(v[0], v[1], v[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilityConfig {
    pub triple: Triple,
    pub lambda: f64,
    pub delta: f64,
    pub h: f64,
    /// Viscosity constant; the model viscosity is `β = γh`.
    pub gamma: f64,
    /// `T = p'(1)`.
    pub t: f64,
    pub xi: f64,
}

impl StabilityConfig {
    pub fn beta(&self) -> f64 {
        self.gamma * self.h
    }

    pub fn xi_max(&self) -> f64 {
        std::f64::consts::PI / self.h
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.lambda >= 0.0
            && self.delta > 0.0
            && self.h > 0.0
            && self.gamma >= 0.0
            && self.t >= 0.0
            && [self.lambda, self.delta, self.h, self.gamma, self.t, self.xi].iter().all(|v| v.is_finite());
        if !ok {
            return Err(StabilityError::InvalidConfig(format!("{self:?}")));
        }
        if self.xi.abs() > self.xi_max() * (1.0 + 1e-12) {
            return Err(StabilityError::InvalidConfig(format!(
                "|xi| = {} exceeds pi/h = {}",
                self.xi.abs(),
                self.xi_max()
            )));
        }
        Ok(())
    }
}

/// Variable in which the polynomial coefficients are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Basis {
    /// Coefficients in `q`.
    Q,
    /// Coefficients in `z = q - 1`; avoids cancellation for roots clustered near 1.
    Shifted,
}

impl Basis {
    /// `q - 1` and `q`.
    fn atoms(self) -> ([f64; 2], [f64; 2]) {
        match self {
            Basis::Q => ([-1.0, 1.0], [0.0, 1.0]),
            Basis::Shifted => ([0.0, 1.0], [1.0, 1.0]),
        }
    }
}

fn q_pow(q: &[f64; 2], k: usize, s: f64) -> Coefficients {
    (0..k).fold(vec![s], |acc, _| poly_mul(&acc, q))
}

fn em_in(cfg: &StabilityConfig, basis: Basis) -> Coefficients {
    let (l2, d2, x2) = (cfg.lambda * cfg.lambda, cfg.delta * cfg.delta, cfg.xi * cfg.xi);
    let (qm1, q) = basis.atoms();
    let damp = poly_add(&qm1, &[cfg.beta() * x2 * cfg.delta]);
    let t1 = poly_scale(&poly_mul(&poly_mul(&qm1, &qm1), &damp), l2);
    let t2 = poly_mul(&q_pow(&q, cfg.triple.d(), d2 * x2), &damp);
    let t3 = poly_mul(&q_pow(&q, cfg.triple.a as usize + 1, d2), &qm1);
    poly_add(&poly_add(&t1, &t2), &t3)
}

fn es_in(cfg: &StabilityConfig, basis: Basis) -> Coefficients {
    let (l2, d2, x2) = (cfg.lambda * cfg.lambda, cfg.delta * cfg.delta, cfg.xi * cfg.xi);
    let a = cfg.triple.a as usize;
    let (qm1, q) = basis.atoms();
    let damp = poly_add(&qm1, &[cfg.beta() * x2 * cfg.delta]);
    let t1 = poly_scale(&poly_mul(&qm1, &damp), l2);
    let t2 = q_pow(&q, a + 1, d2);
    let t3 = q_pow(&q, a, cfg.t * d2 * l2 * x2);
    let t4 = poly_scale(&damp, cfg.beta() * cfg.delta * l2 * x2);
    poly_add(&poly_add(&t1, &t2), &poly_add(&t3, &t4))
}

/// `λ²(q−1)²(q−1+β|ξ|²δ) + q^d δ²|ξ|²(q−1+β|ξ|²δ) + q^{a+1}δ²(q−1)`.
pub fn em_polynomial(cfg: &StabilityConfig) -> Coefficients {
    em_in(cfg, Basis::Q)
}

/// `λ²(q−1)(q−1+β|ξ|²δ) + q^{a+1}δ² + Tδ²λ²|ξ|²q^a + βδλ²(q−1+β|ξ|²δ)|ξ|²`.
pub fn es_polynomial(cfg: &StabilityConfig) -> Coefficients {
    es_in(cfg, Basis::Q)
}

/// `P_λ` with coefficients in `z = q − 1`.
pub fn em_polynomial_shifted(cfg: &StabilityConfig) -> Coefficients {
    em_in(cfg, Basis::Shifted)
}

/// `Q_λ` with coefficients in `z = q − 1`.
pub fn es_polynomial_shifted(cfg: &StabilityConfig) -> Coefficients {
    es_in(cfg, Basis::Shifted)
}
