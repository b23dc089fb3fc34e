//! Induced geometry: the conformal immersion into ℝ³, metric factor and
//! Gaussian curvature, topological charge, implicit-surface calibration, and
//! mesh/CSV export.

mod charge;
mod export;
mod immersion;
mod implicit;

pub use charge::{topological_charge, topological_charge_on_grid, ChargeResult};
pub use export::{patch_csv, patch_obj, patch_summary_json, PatchSummary};
pub use immersion::{
    gaussian_curvature, immerse_patch, immerse_point, ImmersionPoint, SurfacePatch,
    CURVATURE_FD_STEP,
};
pub use implicit::{calibrate_translation, implicit_residual, Calibration, ImplicitSurfaceSpec};
