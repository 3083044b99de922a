//! Real polynomials in ascending coefficient order and their complex roots.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, StabilityError};

/// `c[0] + c[1] q + c[2] q² + ...`
pub type Coefficients = Vec<f64>;

pub fn poly_mul(a: &[f64], b: &[f64]) -> Coefficients {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &[f64], b: &[f64]) -> Coefficients {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] += y;
    }
    out
}

pub fn poly_scale(a: &[f64], s: f64) -> Coefficients {
    a.iter().map(|x| x * s).collect()
}

/// `s·q^k`.
pub fn monomial(k: usize, s: f64) -> Coefficients {
    let mut out = vec![0.0; k + 1];
    out[k] = s;
    out
}

/// Horner evaluation at a complex point.
pub fn poly_eval(c: &[f64], q: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * q + a)
}

fn poly_eval_with_derivative(c: &[f64], q: Complex64) -> (Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    c.iter().rev().fold((zero, zero), |(p, dp), &a| (p * q + a, dp * q + p))
}

/// Coefficients with exactly-zero leading terms removed.
pub fn trim(c: &[f64]) -> &[f64] {
    let deg = c.iter().rposition(|v| *v != 0.0).map_or(0, |i| i + 1);
    &c[..deg]
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub max_modulus: f64,
}

impl RootSet {
    fn from_roots(roots: Vec<Complex64>) -> Self {
        let max_modulus = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
        Self { roots, max_modulus }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Every root has a partner within `tol` (relative) of its conjugate.
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        let mut used = vec![false; self.roots.len()];
        for r in &self.roots {
            let c = r.conj();
            let found = self.roots.iter().enumerate().find(|(i, s)| !used[*i] && (**s - c).norm() <= tol * (1.0 + c.norm()));
            match found {
                Some((i, _)) => used[i] = true,
                None => return false,
            }
        }
        true
    }
}

/// Roots of a real polynomial. The largest root of the companion matrix is
/// polished on the original coefficients and deflated from the constant term
/// (stable for the largest root), until a quadratic remains.
pub fn polynomial_roots(coefficients: &[f64]) -> Result<RootSet> {
    if coefficients.iter().any(|c| !c.is_finite()) {
        return Err(StabilityError::NonFinite);
    }
    let c = trim(coefficients);
    if c.is_empty() {
        return Err(StabilityError::ZeroPolynomial);
    }
    let zero = Complex64::new(0.0, 0.0);
    let lowest = c.iter().position(|v| *v != 0.0).unwrap_or(0);
    let mut roots = vec![zero; lowest];
    let mut work: Vec<f64> = c[lowest..].to_vec();
    while work.len() > 3 {
        let r = polish(c, largest_companion_root(&work));
        if r.im.abs() <= 1e-14 * r.norm() {
            work = deflate_linear(&work, r.re);
            roots.push(Complex64::new(r.re, 0.0));
        } else {
            work = deflate_quadratic(&work, -2.0 * r.re, r.norm_sqr());
            roots.push(r);
            roots.push(r.conj());
        }
    }
    match work.len() {
        2 => roots.push(Complex64::new(-work[0] / work[1], 0.0)),
        3 => roots.extend(quadratic_roots(work[0], work[1], work[2])),
        _ => {}
    }
    let roots = roots.into_iter().map(|r| if r == zero { r } else { polish(c, r) }).collect();
    Ok(RootSet::from_roots(roots))
}

fn largest_companion_root(c: &[f64]) -> Complex64 {
    let deg = c.len() - 1;
    let lead = c[deg];
    let mut comp = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        comp[(i, deg - 1)] = -c[i] / lead;
    }
    let eig = comp.complex_eigenvalues();
    eig.iter().copied().max_by(|a, b| a.norm().total_cmp(&b.norm())).expect("degree is positive")
}

/// `c / (q - r)`, solved upward from the constant term.
fn deflate_linear(c: &[f64], r: f64) -> Vec<f64> {
    let mut b = vec![0.0; c.len() - 1];
    b[0] = -c[0] / r;
    for i in 1..b.len() {
        b[i] = (b[i - 1] - c[i]) / r;
    }
    b
}

/// `c / (q² + s q + t)`, solved upward from the constant term.
fn deflate_quadratic(c: &[f64], s: f64, t: f64) -> Vec<f64> {
    let mut b = vec![0.0; c.len() - 2];
    for i in 0..b.len() {
        let prev1 = if i >= 1 { b[i - 1] } else { 0.0 };
        let prev2 = if i >= 2 { b[i - 2] } else { 0.0 };
        b[i] = (c[i] - s * prev1 - prev2) / t;
    }
    b
}

/// Roots of `c0 + c1 q + c2 q²` without cancellation.
fn quadratic_roots(c0: f64, c1: f64, c2: f64) -> [Complex64; 2] {
    let disc = c1 * c1 - 4.0 * c2 * c0;
    if disc >= 0.0 {
        let w = -0.5 * (c1 + c1.signum() * disc.sqrt());
        if w == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(w / c2, 0.0), Complex64::new(c0 / w, 0.0)]
    } else {
        let re = -c1 / (2.0 * c2);
        let im = (-disc).sqrt() / (2.0 * c2).abs();
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

fn polish(c: &[f64], mut q: Complex64) -> Complex64 {
    let scale = |q: Complex64| -> f64 {
        let m = q.norm();
        c.iter().enumerate().map(|(i, a)| a.abs() * m.powi(i as i32)).sum()
    };
    let mut best = (poly_eval(c, q).norm() / scale(q).max(f64::MIN_POSITIVE), q);
    for _ in 0..8 {
        let (p, dp) = poly_eval_with_derivative(c, q);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        q -= p / dp;
        if !(q.re.is_finite() && q.im.is_finite()) {
            break;
        }
        let err = poly_eval(c, q).norm() / scale(q).max(f64::MIN_POSITIVE);
        if err < best.0 {
            best = (err, q);
        }
    }
    best.1
}

/// `|P(q)| / Σ|c_i||q|^i`, the backward error of a computed root.
pub fn relative_residual(c: &[f64], q: Complex64) -> f64 {
    let m = q.norm();
    let scale: f64 = c.iter().enumerate().map(|(i, a)| a.abs() * m.powi(i as i32)).sum();
    if scale == 0.0 {
        return 0.0;
    }
    poly_eval(c, q).norm() / scale
}
