use crate::error::{CoreError, Result};

/// Default density floor applied after every update.
pub const DENSITY_FLOOR: f64 = 1e-8;

/// Conserved variables of one species, one entry per cell.
#[derive(Debug, Clone, PartialEq)]
pub struct FluidState {
    pub n: Vec<f64>,
    pub qx: Vec<f64>,
    pub qy: Vec<f64>,
}

impl FluidState {
    pub fn new(n: Vec<f64>, qx: Vec<f64>, qy: Vec<f64>) -> Result<Self> {
        if qx.len() != n.len() {
            return Err(CoreError::LengthMismatch { expected: n.len(), got: qx.len() });
        }
        if qy.len() != n.len() {
            return Err(CoreError::LengthMismatch { expected: n.len(), got: qy.len() });
        }
        Ok(Self { n, qx, qy })
    }

    pub fn uniform(n_cells: usize, n: f64, ux: f64, uy: f64) -> Self {
        Self {
            n: vec![n; n_cells],
            qx: vec![n * ux; n_cells],
            qy: vec![n * uy; n_cells],
        }
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn cell(&self, k: usize) -> CellState {
        CellState { n: self.n[k], qx: self.qx[k], qy: self.qy[k] }
    }

    pub fn ux(&self) -> Vec<f64> {
        self.n.iter().zip(&self.qx).map(|(n, q)| q / n).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.n.iter().chain(&self.qx).chain(&self.qy).all(|v| v.is_finite())
    }

    pub fn total_mass(&self, h: f64) -> f64 {
        self.n.iter().sum::<f64>() * h
    }
}

/// Conserved variables in a single cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellState {
    pub n: f64,
    pub qx: f64,
    pub qy: f64,
}

impl CellState {
    pub fn new(n: f64, qx: f64, qy: f64) -> Self {
        Self { n, qx, qy }
    }

    pub fn from_velocity(n: f64, ux: f64, uy: f64) -> Self {
        Self { n, qx: n * ux, qy: n * uy }
    }

    #[inline]
    pub fn ux(&self) -> f64 {
        self.qx / self.n
    }

    #[inline]
    pub fn uy(&self) -> f64 {
        self.qy / self.n
    }

    pub fn mean(a: &CellState, b: &CellState) -> CellState {
        CellState {
            n: 0.5 * (a.n + b.n),
            qx: 0.5 * (a.qx + b.qx),
            qy: 0.5 * (a.qy + b.qy),
        }
    }
}

/// Staggered field: `ex` and `bz` on the `n_cells + 1` interfaces, `ey` on cell centers.
#[derive(Debug, Clone, PartialEq)]
pub struct EMField {
    pub ex: Vec<f64>,
    pub ey: Vec<f64>,
    pub bz: Vec<f64>,
}

impl EMField {
    pub fn new(ex: Vec<f64>, ey: Vec<f64>, bz: Vec<f64>) -> Result<Self> {
        if ex.len() != ey.len() + 1 {
            return Err(CoreError::LengthMismatch { expected: ey.len() + 1, got: ex.len() });
        }
        if bz.len() != ey.len() + 1 {
            return Err(CoreError::LengthMismatch { expected: ey.len() + 1, got: bz.len() });
        }
        Ok(Self { ex, ey, bz })
    }

    pub fn zeros(n_cells: usize) -> Self {
        Self {
            ex: vec![0.0; n_cells + 1],
            ey: vec![0.0; n_cells],
            bz: vec![0.0; n_cells + 1],
        }
    }

    pub fn with_bz(n_cells: usize, bz: f64) -> Self {
        Self {
            ex: vec![0.0; n_cells + 1],
            ey: vec![0.0; n_cells],
            bz: vec![bz; n_cells + 1],
        }
    }

    pub fn n_cells(&self) -> usize {
        self.ey.len()
    }

    pub fn is_finite(&self) -> bool {
        self.ex.iter().chain(&self.ey).chain(&self.bz).all(|v| v.is_finite())
    }
}

/// Interface values to cell centers: `c_k = (v_k + v_{k+1}) / 2`.
pub fn face_average(interfaces: &[f64]) -> Result<Vec<f64>> {
    if interfaces.len() < 2 {
        return Err(CoreError::LengthMismatch { expected: 2, got: interfaces.len() });
    }
    Ok(interfaces.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect())
}

/// Midpoint value between two neighbouring cells.
#[inline]
pub fn interface_mean(left: f64, right: f64) -> f64 {
    0.5 * (left + right)
}
