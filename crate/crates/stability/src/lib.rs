//! Von Neumann analysis of the linearized viscous Euler-Maxwell time
//! discretizations, indexed by the implicitness triple `(a, b, c)`, and the
//! dispersion relation of the continuous linearized model.

pub mod characteristic;
pub mod dispersion;
pub mod error;
pub mod polynomial;
pub mod scan;

pub use characteristic::{
    em_polynomial, em_polynomial_shifted, es_polynomial, es_polynomial_shifted, StabilityConfig, Triple,
};
pub use dispersion::{dispersion_modes, DispersionModes};
pub use error::{Result, StabilityError};
pub use polynomial::{polynomial_roots, RootSet};
pub use scan::{
    bisect_stability_limit, growth_at, max_growth_factor, stability_region_scan, write_stability_csv, GrowthReport, ModelParams,
    StabilityRow, DEFAULT_XI_SAMPLES, STABLE_TOL,
};
