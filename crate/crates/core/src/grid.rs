use crate::error::{CoreError, Result};

/// Uniform 1D mesh. Cell `k` spans interfaces `k` and `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub h: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self> {
        if n_cells == 0 {
            return Err(CoreError::InvalidGrid("n_cells must be positive".into()));
        }
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(CoreError::InvalidGrid(format!(
                "bounds must satisfy x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            n_cells,
            h: (x_max - x_min) / n_cells as f64,
        })
    }

    pub fn center(&self, k: usize) -> f64 {
        self.x_min + (k as f64 + 0.5) * self.h
    }

    pub fn interface(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.h
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.n_cells).map(|k| self.center(k)).collect()
    }

    pub fn interfaces(&self) -> Vec<f64> {
        (0..=self.n_cells).map(|j| self.interface(j)).collect()
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }
}
