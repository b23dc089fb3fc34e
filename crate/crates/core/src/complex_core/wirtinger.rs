//! Wirtinger derivatives ∂ = ½(∂ₓ - i∂_y), ∂̄ = ½(∂ₓ + i∂_y) by central
//! differences on the four stencil points z ± h, z ± ih. The stencil is
//! exact for polynomials in z, z̄ of total degree ≤ 2 and carries O(h²)
//! truncation error on C³ fields.

use super::field::{ExactDerivs, FieldSampler, C};
use crate::error::Error;
use crate::Result;

/// Central-difference Wirtinger derivatives of a scalar field.
pub fn wirtinger<F: Fn(C) -> C>(f: F, z0: C, h: f64) -> (C, C) {
    let ih = C::new(0.0, h);
    let fx = (f(z0 + h) - f(z0 - h)) / (2.0 * h);
    let fy = (f(z0 + ih) - f(z0 - ih)) / (2.0 * h);
    let i = C::i();
    (0.5 * (fx - i * fy), 0.5 * (fx + i * fy))
}

/// Wirtinger derivatives of both components of a sampler, plus the center
/// value. Checks the stencil against the sampler's singular set.
#[derive(Debug, Clone, Copy)]
pub struct SamplerDerivs {
    pub d_psi1: C,
    pub db_psi1: C,
    pub d_psi2: C,
    pub db_psi2: C,
}

impl From<ExactDerivs> for SamplerDerivs {
    fn from(e: ExactDerivs) -> Self {
        Self {
            d_psi1: e.d_psi1,
            db_psi1: e.db_psi1,
            d_psi2: e.d_psi2,
            db_psi2: e.db_psi2,
        }
    }
}

/// Derivatives of (ψ₁, ψ₂): closed form when the sampler provides it,
/// otherwise one shared five-point stencil evaluation.
pub fn sampler_derivs<S: FieldSampler + ?Sized>(
    sampler: &S,
    z: C,
    h: f64,
    use_exact: bool,
) -> Result<SamplerDerivs> {
    if use_exact {
        if let Some(e) = sampler.exact_derivatives(z) {
            return Ok(e.into());
        }
    }
    fd_sampler_derivs(sampler, z, h)
}

/// Finite-difference derivatives of both components from the shared stencil.
pub fn fd_sampler_derivs<S: FieldSampler + ?Sized>(
    sampler: &S,
    z: C,
    h: f64,
) -> Result<SamplerDerivs> {
    let ih = C::new(0.0, h);
    let pts = [z + h, z - h, z + ih, z - ih];
    for p in pts {
        if sampler.singular_within(p, 0.0) {
            return Err(Error::StencilOnSingularity(p));
        }
    }
    let vp = sampler.eval(pts[0]);
    let vm = sampler.eval(pts[1]);
    let vu = sampler.eval(pts[2]);
    let vd = sampler.eval(pts[3]);
    let i = C::i();
    let two_h = 2.0 * h;

    let fx1 = (vp.psi1 - vm.psi1) / two_h;
    let fy1 = (vu.psi1 - vd.psi1) / two_h;
    let fx2 = (vp.psi2 - vm.psi2) / two_h;
    let fy2 = (vu.psi2 - vd.psi2) / two_h;

    Ok(SamplerDerivs {
        d_psi1: 0.5 * (fx1 - i * fy1),
        db_psi1: 0.5 * (fx1 + i * fy1),
        d_psi2: 0.5 * (fx2 - i * fy2),
        db_psi2: 0.5 * (fx2 + i * fy2),
    })
}
