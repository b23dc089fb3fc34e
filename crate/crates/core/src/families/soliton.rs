//! One-soliton family with two real poles a ≠ b, kept in its catalogued
//! normalization
//!
//! ```text
//! ψ₁ = ±(a-b)(z-a)/Q,   ψ₂ = ±(a-b)(z̄-b)/Q,   Q = |z-a|² + |z-b|²,
//! ```
//!
//! which has no singularities (Q > 0 for a ≠ b). Note: in this normalization
//! the field satisfies ∂ψ₁ = pψ₂/(a-b) rather than ∂ψ₁ = pψ₂, i.e. it is an
//! errata candidate under the unit-coefficient residual gate; the rescaling
//! by (a-b)^{-1/2} that does pass the gate appears in the catalog as the
//! N = 1 multi-soliton. Its curvature and implicit-surface claims are stated
//! for this normalization, so it is kept verbatim.

use super::phase::PhaseInts;
use crate::complex_core::{ExactDerivs, FieldSampler, FieldValue, C};
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct SolitonParams {
    pub a: f64,
    pub b: f64,
}

impl SolitonParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::BadParams("soliton poles must be finite".into()));
        }
        if a == b {
            return Err(Error::DegenerateFamily("one-soliton needs a != b".into()));
        }
        Ok(Self { a, b })
    }
}

#[derive(Debug, Clone)]
pub struct OneSolitonField {
    a: f64,
    b: f64,
    sign1: f64,
    sign2: f64,
}

impl OneSolitonField {
    pub fn new(params: SolitonParams, phases: PhaseInts) -> Self {
        Self {
            a: params.a,
            b: params.b,
            sign1: phases.sign1(),
            sign2: phases.sign2(),
        }
    }

    fn q(&self, z: C) -> f64 {
        (z - self.a).norm_sqr() + (z - self.b).norm_sqr()
    }
}

impl FieldSampler for OneSolitonField {
    fn eval(&self, z: C) -> FieldValue {
        let delta = self.a - self.b;
        let q = self.q(z);
        let psi1 = self.sign1 * delta * (z - self.a) / q;
        let psi2 = self.sign2 * delta * (z.conj() - self.b) / q;
        FieldValue::new(psi1, psi2)
    }

    fn exact_derivatives(&self, z: C) -> Option<ExactDerivs> {
        let delta = self.a - self.b;
        let sigma = self.a + self.b;
        let q = self.q(z);
        let q2 = q * q;
        let dq = 2.0 * z.conj() - sigma; // ∂Q
        let dbq = 2.0 * z - sigma; // ∂̄Q
        let d_psi1 = self.sign1 * delta * delta * (z.conj() - self.b) / q2;
        let db_psi1 = -self.sign1 * delta * (z - self.a) * dbq / q2;
        let d_psi2 = -self.sign2 * delta * (z.conj() - self.b) * dq / q2;
        let db_psi2 = -self.sign2 * delta * delta * (z - self.a) / q2;
        Some(ExactDerivs {
            d_psi1,
            db_psi1,
            d_psi2,
            db_psi2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn standard() -> OneSolitonField {
        OneSolitonField::new(SolitonParams::new(1.0, -1.0).unwrap(), PhaseInts::default())
    }

    #[test]
    fn pinned_values_at_origin() {
        let f = standard();
        let v = f.eval(C::new(0.0, 0.0));
        assert_abs_diff_eq!((v.psi1 - C::new(-1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((v.psi2 - C::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.p(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn equal_poles_rejected() {
        assert!(SolitonParams::new(0.5, 0.5).is_err());
    }

    #[test]
    fn exact_derivatives_match_finite_differences() {
        let f = standard();
        for &z in &[C::new(0.3, 0.4), C::new(-1.2, 0.9), C::new(2.0, -1.5)] {
            let e = f.exact_derivatives(z).unwrap();
            let fd = crate::complex_core::sampler_derivs(&f, z, 1e-6, false).unwrap();
            for (a, b) in [
                (e.d_psi1, fd.d_psi1),
                (e.db_psi1, fd.db_psi1),
                (e.d_psi2, fd.d_psi2),
                (e.db_psi2, fd.db_psi2),
            ] {
                assert!((a - b).norm() < 1e-8, "at {z}: exact {a} vs fd {b}");
            }
        }
    }

    #[test]
    fn conservation_law_holds_in_closed_form() {
        // ∂(ψ₁²) + ∂̄(ψ₂²) = 0 is scale invariant and holds for this family
        // even though the unit-coefficient system does not.
        let f = standard();
        for &z in &[C::new(0.7, -0.2), C::new(-0.4, 1.1)] {
            let v = f.eval(z);
            let e = f.exact_derivatives(z).unwrap();
            let cons = 2.0 * v.psi1 * e.d_psi1 + 2.0 * v.psi2 * e.db_psi2;
            assert!(cons.norm() < 1e-14, "conservation residual {cons} at {z}");
        }
    }
}
