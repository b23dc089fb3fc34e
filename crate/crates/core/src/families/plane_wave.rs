//! Plane-wave ("vacuum") family and the two-mode superposition built on the
//! linear reduction of the constrained system.
//!
//! Vacuum: ψ₁ = A e^{i(hz + kz̄)}, ψ₂ = i (A/k) e^{i(hz + kz̄)} with h, k
//! real. Direct substitution into the system forces p ≡ 1 in the second
//! equation, so the form solves the gate only on the feasibility set
//! hk = 1, |A|² = k²/(1 + k²); elsewhere it is reported as measured.
//!
//! Superposition: ψ₁ = A₁e^{α₁(z+z̄)} + A₂e^{α₂(z-z̄)} and
//! ψ₂ = B₁e^{α₁(z+z̄)} + B₂e^{α₂(z-z̄)} with B_i = α_i A_i / p₀. Complex α₁
//! is accepted; the residual gate adjudicates which parameter sets work.

use crate::complex_core::{ExactDerivs, FieldSampler, FieldValue, C};
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone, Copy)]
pub struct VacuumParams {
    pub amplitude: C,
    pub h: f64,
    pub k: f64,
}

impl VacuumParams {
    pub fn new(amplitude: C, h: f64, k: f64) -> Result<Self> {
        if !amplitude.re.is_finite() || !amplitude.im.is_finite() || !h.is_finite() || !k.is_finite()
        {
            return Err(Error::BadParams("vacuum family: non-finite input".into()));
        }
        if k == 0.0 {
            return Err(Error::DegenerateFamily("vacuum family needs k != 0".into()));
        }
        Ok(Self { amplitude, h, k })
    }

    /// A parameter set on which the form passes the residual gate exactly:
    /// hk = 1 with |A|² = k²/(1+k²). Found by the feasibility scan and kept
    /// as the canonical exact representative.
    pub fn feasible() -> Self {
        Self {
            amplitude: C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0),
            h: 1.0,
            k: 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlaneWaveField {
    a: C,
    h: f64,
    k: f64,
}

impl PlaneWaveField {
    pub fn new(params: VacuumParams) -> Self {
        Self {
            a: params.amplitude,
            h: params.h,
            k: params.k,
        }
    }

    fn wave(&self, z: C) -> C {
        (C::i() * (self.h * z + self.k * z.conj())).exp()
    }
}

impl FieldSampler for PlaneWaveField {
    fn eval(&self, z: C) -> FieldValue {
        let w = self.wave(z);
        FieldValue::new(self.a * w, C::i() * self.a / self.k * w)
    }

    fn exact_derivatives(&self, z: C) -> Option<ExactDerivs> {
        let v = self.eval(z);
        let ih = C::i() * self.h;
        let ik = C::i() * self.k;
        Some(ExactDerivs {
            d_psi1: ih * v.psi1,
            db_psi1: ik * v.psi1,
            d_psi2: ih * v.psi2,
            db_psi2: ik * v.psi2,
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuperpositionParams {
    pub a1: C,
    pub a2: C,
    pub alpha1: C,
    pub alpha2: C,
    pub p0: f64,
}

impl SuperpositionParams {
    pub fn new(a1: C, a2: C, alpha1: C, alpha2: C, p0: f64) -> Result<Self> {
        if p0 <= 0.0 || !p0.is_finite() {
            return Err(Error::BadParams("superposition needs p0 > 0".into()));
        }
        Ok(Self {
            a1,
            a2,
            alpha1,
            alpha2,
            p0,
        })
    }

    /// B_i = α_i A_i / p₀ as catalogued.
    pub fn b1(&self) -> C {
        self.alpha1 * self.a1 / self.p0
    }

    pub fn b2(&self) -> C {
        self.alpha2 * self.a2 / self.p0
    }

    /// The catalogued orthogonality constraint A₁Ā₂ + B₁B̄₂, reported as a
    /// diagnostic (zero on admissible parameter sets).
    pub fn orthogonality_defect(&self) -> f64 {
        (self.a1 * self.a2.conj() + self.b1() * self.b2().conj()).norm()
    }
}

#[derive(Debug, Clone)]
pub struct SuperpositionField {
    p: SuperpositionParams,
}

impl SuperpositionField {
    pub fn new(p: SuperpositionParams) -> Self {
        Self { p }
    }

    fn modes(&self, z: C) -> (C, C) {
        let zb = z.conj();
        let e1 = (self.p.alpha1 * (z + zb)).exp();
        let e2 = (self.p.alpha2 * (z - zb)).exp();
        (e1, e2)
    }
}

impl FieldSampler for SuperpositionField {
    fn eval(&self, z: C) -> FieldValue {
        let (e1, e2) = self.modes(z);
        FieldValue::new(
            self.p.a1 * e1 + self.p.a2 * e2,
            self.p.b1() * e1 + self.p.b2() * e2,
        )
    }

    fn exact_derivatives(&self, z: C) -> Option<ExactDerivs> {
        let (e1, e2) = self.modes(z);
        let (a1, a2) = (self.p.a1, self.p.a2);
        let (b1, b2) = (self.p.b1(), self.p.b2());
        let (al1, al2) = (self.p.alpha1, self.p.alpha2);
        Some(ExactDerivs {
            d_psi1: a1 * al1 * e1 + a2 * al2 * e2,
            db_psi1: a1 * al1 * e1 - a2 * al2 * e2,
            d_psi2: b1 * al1 * e1 + b2 * al2 * e2,
            db_psi2: b1 * al1 * e1 - b2 * al2 * e2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vacuum_value_at_origin() {
        let a = C::new(0.3, 0.4);
        let f = PlaneWaveField::new(VacuumParams::new(a, 2.0, 0.5).unwrap());
        let v = f.eval(C::new(0.0, 0.0));
        assert_abs_diff_eq!((v.psi1 - a).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((v.psi2 - C::i() * a / 0.5).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn vacuum_modulus_constant_for_equal_wavenumbers() {
        let f = PlaneWaveField::new(VacuumParams::feasible());
        let p0 = f.eval(C::new(0.0, 0.0)).p();
        for &z in &[C::new(1.0, -2.0), C::new(-3.3, 0.7), C::new(0.1, 4.0)] {
            assert_abs_diff_eq!(f.eval(z).p(), p0, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(p0, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn feasible_vacuum_solves_the_system_pointwise() {
        let f = PlaneWaveField::new(VacuumParams::feasible());
        for &z in &[C::new(0.2, 0.3), C::new(-1.0, 0.5)] {
            let v = f.eval(z);
            let e = f.exact_derivatives(z).unwrap();
            let p = v.p();
            assert!((e.d_psi1 - p * v.psi2).norm() < 1e-14);
            assert!((e.db_psi2 + p * v.psi1).norm() < 1e-14);
        }
    }

    #[test]
    fn zero_k_is_degenerate() {
        assert!(VacuumParams::new(C::new(1.0, 0.0), 1.0, 0.0).is_err());
    }

    #[test]
    fn degenerate_single_mode_superposition_is_exact() {
        // A₂ = 0 with α₁ = i p₀ reduces to a gate-passing single wave.
        let p0 = 1.0;
        let a1 = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let sp = SuperpositionParams::new(a1, C::new(0.0, 0.0), C::i() * p0, C::new(p0, 0.0), p0)
            .unwrap();
        let f = SuperpositionField::new(sp);
        for &z in &[C::new(0.4, -0.3), C::new(-0.9, 1.2)] {
            let v = f.eval(z);
            let e = f.exact_derivatives(z).unwrap();
            let p = v.p();
            assert_abs_diff_eq!(p, p0, epsilon = 1e-12);
            assert!((e.d_psi1 - p * v.psi2).norm() < 1e-12);
            assert!((e.db_psi2 + p * v.psi1).norm() < 1e-12);
        }
    }

    #[test]
    fn generic_two_mode_superposition_violates_orthogonality() {
        let sp = SuperpositionParams::new(
            C::new(0.5, 0.0),
            C::new(0.5, 0.0),
            C::i(),
            C::new(1.0, 0.0),
            1.0,
        )
        .unwrap();
        assert!(sp.orthogonality_defect() > 0.1);
    }
}
