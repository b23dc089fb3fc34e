//! Bump-type separable family, catalogued as
//!
//! ```text
//! ψ₁ = D E e^{2λz + λz̄} / (E² e^{2λ(z+z̄)} + 1),
//! ψ₂ = D   e^{λz}        / (E² e^{2λ(z+z̄)} + 1),
//! D = 2(c + i) (λE/(c² + 1))^{1/2},
//! ```
//!
//! requiring λE > 0 so the radicand is positive. For λ < 0 the field is
//! bounded on the whole plane. As catalogued the form solves the system with
//! coefficient ½ on p (the exact rescaling is ψ/√2), so under the unit
//! gate it is an errata candidate; residuals are measured and reported.

use crate::complex_core::{ExactDerivs, FieldSampler, FieldValue, C};
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct BumpParams {
    pub c: f64,
    pub lambda: f64,
    pub e: f64,
}

impl BumpParams {
    pub fn new(c: f64, lambda: f64, e: f64) -> Result<Self> {
        if !c.is_finite() || !lambda.is_finite() || !e.is_finite() {
            return Err(Error::BadParams("bump family: non-finite input".into()));
        }
        let radicand = lambda * e / (c * c + 1.0);
        if radicand <= 0.0 {
            return Err(Error::DegenerateFamily(format!(
                "bump family needs lambda*E/(c^2+1) > 0, got {radicand}"
            )));
        }
        Ok(Self { c, lambda, e })
    }

    pub fn d(&self) -> C {
        let r = (self.lambda * self.e / (self.c * self.c + 1.0)).sqrt();
        2.0 * C::new(self.c, 1.0) * r
    }
}

#[derive(Debug, Clone)]
pub struct BumpField {
    p: BumpParams,
}

impl BumpField {
    pub fn new(p: BumpParams) -> Self {
        Self { p }
    }

    fn w(&self, z: C) -> f64 {
        let x = z.re;
        self.p.e * self.p.e * (4.0 * self.p.lambda * x).exp()
    }
}

impl FieldSampler for BumpField {
    fn eval(&self, z: C) -> FieldValue {
        let lam = self.p.lambda;
        let den = self.w(z) + 1.0;
        let d = self.p.d();
        let psi1 = d * self.p.e * (lam * (2.0 * z + z.conj())).exp() / den;
        let psi2 = d * (lam * z).exp() / den;
        FieldValue::new(psi1, psi2)
    }

    fn exact_derivatives(&self, z: C) -> Option<ExactDerivs> {
        let lam = self.p.lambda;
        let w = self.w(z);
        let den = w + 1.0;
        let v = self.eval(z);
        // ∂W = ∂̄W = 2λW since W depends on z + z̄ only
        Some(ExactDerivs {
            d_psi1: v.psi1 * (2.0 * lam - 2.0 * lam * w / den),
            db_psi1: v.psi1 * (lam - 2.0 * lam * w / den),
            d_psi2: v.psi2 * (lam - 2.0 * lam * w / den),
            db_psi2: v.psi2 * (-2.0 * lam * w / den),
        })
    }
}
