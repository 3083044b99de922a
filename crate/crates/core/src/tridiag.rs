//! Direct solvers for the tridiagonal `E_y` systems.

use crate::error::{CoreError, Result};

/// Row `i` reads `sub[i]·x[i-1] + main[i]·x[i] + sup[i]·x[i+1] = rhs[i]`.
/// With `periodic`, `sub[0]` couples to `x[n-1]` and `sup[n-1]` to `x[0]`;
/// otherwise those two entries are ignored (boundary closures are already folded in).
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub main: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
    pub periodic: bool,
}

impl TridiagonalSystem {
    pub fn len(&self) -> usize {
        self.main.len()
    }

    pub fn is_empty(&self) -> bool {
        self.main.is_empty()
    }

    fn check(&self) -> Result<()> {
        let n = self.main.len();
        for v in [&self.sub, &self.sup, &self.rhs] {
            if v.len() != n {
                return Err(CoreError::LengthMismatch { expected: n, got: v.len() });
            }
        }
        if n == 0 {
            return Err(CoreError::LengthMismatch { expected: 1, got: 0 });
        }
        Ok(())
    }

    /// `A·x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.main[i] * x[i];
                if i > 0 {
                    s += self.sub[i] * x[i - 1];
                } else if self.periodic {
                    s += self.sub[0] * x[n - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                } else if self.periodic {
                    s += self.sup[n - 1] * x[0];
                }
                s
            })
            .collect()
    }

    /// `max|A·x - rhs| / (max|A|·max|x| + max|rhs|)`.
    pub fn relative_residual(&self, x: &[f64]) -> f64 {
        let ax = self.apply(x);
        let res = ax.iter().zip(&self.rhs).map(|(a, r)| (a - r).abs()).fold(0.0, f64::max);
        let amax = (0..self.len())
            .map(|i| self.sub[i].abs() + self.main[i].abs() + self.sup[i].abs())
            .fold(0.0, f64::max);
        let xmax = x.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let rmax = self.rhs.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let scale = amax * xmax + rmax;
        if scale == 0.0 {
            res
        } else {
            res / scale
        }
    }
}

fn thomas(sub: &[f64], main: &[f64], sup: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = main.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut beta = main[0];
    if beta == 0.0 || !beta.is_finite() {
        return Err(CoreError::ZeroPivot(0));
    }
    c[0] = if n > 1 { sup[0] / beta } else { 0.0 };
    d[0] = rhs[0] / beta;
    for i in 1..n {
        beta = main[i] - sub[i] * c[i - 1];
        if beta == 0.0 || !beta.is_finite() {
            return Err(CoreError::ZeroPivot(i));
        }
        c[i] = if i + 1 < n { sup[i] / beta } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / beta;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

/// Gaussian elimination with partial pivoting; used for tiny periodic systems.
fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap_or(col);
        if a[piv][col] == 0.0 {
            return Err(CoreError::ZeroPivot(col));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Ok(x)
}

fn solve_cyclic(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    let n = sys.len();
    if n <= 2 {
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] += sys.main[i];
            a[i][(i + n - 1) % n] += sys.sub[i];
            a[i][(i + 1) % n] += sys.sup[i];
        }
        return dense_solve(a, sys.rhs.clone());
    }
    // Sherman-Morrison on the corner entries.
    let corner_top = sys.sub[0];
    let corner_bottom = sys.sup[n - 1];
    let gamma = -sys.main[0];
    let mut main = sys.main.clone();
    main[0] -= gamma;
    main[n - 1] -= corner_bottom * corner_top / gamma;
    let x = thomas(&sys.sub, &main, &sys.sup, &sys.rhs)?;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = corner_bottom;
    let z = thomas(&sys.sub, &main, &sys.sup, &u)?;
    let fact = (x[0] + corner_top * x[n - 1] / gamma) / (1.0 + z[0] + corner_top * z[n - 1] / gamma);
    Ok(x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect())
}

pub fn solve_tridiagonal(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    sys.check()?;
    let x = if sys.periodic {
        solve_cyclic(sys)?
    } else {
        thomas(&sys.sub, &sys.main, &sys.sup, &sys.rhs)?
    };
    if x.iter().any(|v| !v.is_finite()) {
        return Err(CoreError::Numerical("non-finite tridiagonal solution".into()));
    }
    Ok(x)
}

/// Solve the assembled `E_y` system.
pub fn solve_ey_elliptic(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    solve_tridiagonal(sys)
}
