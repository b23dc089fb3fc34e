//! Complex-plane sampling infrastructure: Wirtinger derivatives by central
//! differences, polyline contour quadrature, and 2D area quadrature on
//! rectangular grids with singularity masks.

mod field;
mod grid;
mod path;
mod wirtinger;

pub use field::{ExactDerivs, FdOnly, FieldSampler, FieldValue, C};
pub use grid::{area_integral, DomainGrid};
pub use path::{path_integral, path_integral_fn, staircase, PathPolyline};
pub use wirtinger::{sampler_derivs, wirtinger, SamplerDerivs};

/// Default finite-difference step: balances O(h²) truncation against
/// double-precision rounding.
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Mask clearance around declared singularities, in units of the FD step.
pub const MASK_RADIUS_STEPS: f64 = 10.0;
