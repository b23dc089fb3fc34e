//! Self-contained special-function kernel: Jacobi elliptic sn/cn/dn (and the
//! derived tn = sn/cn), the complete elliptic integral K(k), and the error
//! function of a complex argument.

mod erf;
mod jacobi;

pub use erf::erf_complex;
pub use jacobi::{complete_elliptic_k, jacobi, tn, Jacobi};
