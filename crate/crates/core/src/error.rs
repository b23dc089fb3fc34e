use num_complex::Complex64;
use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("finite-difference stencil touches a singularity near z = {0}")]
    StencilOnSingularity(Complex64),

    #[error("integration path passes through a singularity near z = {0}")]
    PathThroughSingularity(Complex64),

    #[error("domain grid has no usable (unmasked) region")]
    EmptyDomain,

    #[error("degenerate family parameters: {0}")]
    DegenerateFamily(String),

    #[error("argument |w| = {0} outside the validated range |w| <= {1}")]
    OutOfValidatedRange(f64, f64),

    #[error("complete elliptic integral diverges at k = 1")]
    PeriodDiverges,

    #[error("composition map is not harmonic: max |dd̄h| = {0:.3e} exceeds {1:.3e}")]
    NotHarmonic(f64, f64),

    #[error("profile p vanishes or blows up near s = {0}")]
    ProfileVanishes(f64),

    #[error("seed violates |psi1|^2+|psi2|^2 = p(s0): mismatch {0:.3e}")]
    InconsistentSeed(f64),

    #[error("immersion leakage {0:.3e} exceeds tolerance {1:.3e}; the field is not closed")]
    LeakageExceeded(f64, f64),

    #[error("charge integrand tail estimate {0:.3e} exceeds tolerance {1:.3e}")]
    TailTooLarge(f64, f64),

    #[error("calibration data is rank deficient (degenerate point set)")]
    RankDeficient,

    #[error("argument outside the validity range of the table entry: {0}")]
    OutOfRange(String),

    #[error("table-entry parameters violate the range column: {0}")]
    ParameterConstraintViolated(String),

    #[error("unknown family id `{0}`")]
    UnknownFamily(String),

    #[error("bad parameters: {0}")]
    BadParams(String),
}
