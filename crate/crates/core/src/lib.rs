//! One-dimensional Euler-Maxwell plasma schemes on a staggered finite-volume grid.
//!
//! Fluid unknowns `(n, n u_x, n u_y)` and `E_y` live at cell centers; `E_x` and
//! `B_z` live at interfaces. Two time updates are provided: the classical
//! `(0,0,1)` scheme, limited by the light-speed CFL condition, and the
//! asymptotic-preserving `(1,1,1)` scheme, stable under the hydrodynamic CFL
//! condition uniformly in the scaled Debye length `λ`.

pub mod boundary;
pub mod error;
pub mod flux;
pub mod gauss;
pub mod grid;
pub mod onefluid;
pub mod pressure;
pub mod scaling;
pub mod scheme;
pub mod state;
pub mod tridiag;
pub mod twofluid;

pub use boundary::{BoundaryConditionSpec, EmBc, FluidBc, IncidentWave};
pub use error::{CoreError, Result};
pub use flux::{InterfaceFlux, SchemeKind, Species, WaveSpeedEstimate};
pub use grid::Grid1D;
pub use onefluid::OneFluidSnapshot;
pub use pressure::PressureLaw;
pub use scheme::{EySystem, SchemeConfig};
pub use state::{CellState, EMField, FluidState, DENSITY_FLOOR};
pub use twofluid::TwoFluidSnapshot;
