//! Residual engines and the serializable verification report.

mod report;
mod residuals;

pub use report::{IdentityReport, ResidualStats, VerificationReport};
pub use residuals::{
    conservation_residual, constraint_residual, current, current_holomorphy, we_residual,
    we_residual_with, ConstraintSide, WeResidual, DEFAULT_FIRST_ORDER_TOL, DEFAULT_NESTED_TOL,
};
