//! Rational instanton family indexed by a nonzero integer m.
//!
//! The fields come from the potential g = -z^m / (1 + |z|^{2m}) through
//! ψ₁ = ±(∂̄g)^{1/2}, ψ₂ = ±i(∂g)^{1/2}. For m > 0:
//!
//! ```text
//! ψ₁ = ± √m · z^m z̄^{(m-1)/2} / (1 + |z|^{2m}),
//! ψ₂ = ± √m · z^{(m-1)/2}     / (1 + |z|^{2m}),
//! ```
//!
//! and for m = -n < 0 the same expressions in the cancelled form
//!
//! ```text
//! ψ₁ = ± i√n · z̄^{(n-1)/2}      / (1 + |z|^{2n}),
//! ψ₂ = ± i√n · z̄^n z^{(n-1)/2}  / (1 + |z|^{2n}),
//! ```
//!
//! which is finite at the origin. This solves the Weierstrass system exactly
//! for every m ≠ 0 (the widely printed variant with |z|^m in ψ₁ carries a
//! spurious extra phase e^{-i arg z} and fails the residual gate; the
//! verification layer documents that variant as an erratum). Half-integer
//! powers appear for even m: those use the principal branch with the cut on
//! the negative real axis and a branch point at the origin.

use super::phase::PhaseInts;
use crate::complex_core::{ExactDerivs, FieldSampler, FieldValue, C};
use crate::error::Error;
use crate::Result;

#[derive(Debug, Clone)]
pub struct RationalField {
    m: i64,
    sign1: f64,
    sign2: f64,
    /// √m as a complex scalar so negative m keeps a well-defined common
    /// phase i·√|m| on both components.
    root_m: C,
}

impl RationalField {
    pub fn new(m: i64, phases: PhaseInts) -> Result<Self> {
        if m == 0 {
            return Err(Error::DegenerateFamily("rational family needs m != 0".into()));
        }
        let root_m = if m > 0 {
            C::new((m as f64).sqrt(), 0.0)
        } else {
            C::new(0.0, ((-m) as f64).sqrt())
        };
        Ok(Self {
            m,
            sign1: phases.sign1(),
            sign2: phases.sign2(),
            root_m,
        })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    /// z^{(n-1)/2} for n >= 1: an integer power for odd n, principal-branch
    /// square root times an integer power for even n.
    fn half_power(z: C, n: i64) -> C {
        let e = n - 1;
        if e.rem_euclid(2) == 0 {
            z.powi((e / 2) as i32)
        } else {
            z.powi(((e - 1) / 2) as i32) * z.sqrt()
        }
    }

    fn has_cut(&self) -> bool {
        self.m % 2 == 0
    }

    fn n_abs(&self) -> i64 {
        self.m.abs()
    }

    fn denom(&self, z: C) -> f64 {
        1.0 + z.norm().powi(2 * self.n_abs() as i32)
    }
}

impl FieldSampler for RationalField {
    fn eval(&self, z: C) -> FieldValue {
        let n = self.n_abs();
        let den = self.denom(z);
        let half = Self::half_power(z, n);
        let half_bar = half.conj();
        let zn = z.powi(n as i32);
        let (psi1, psi2) = if self.m > 0 {
            (
                self.sign1 * self.root_m * zn * half_bar / den,
                self.sign2 * self.root_m * half / den,
            )
        } else {
            // the system maps solutions by (ψ₁, ψ₂) -> (-ψ̄₂, ψ̄₁); the
            // relative minus is folded in so that n = k = 0 selects the
            // solution branch for negative m as well
            (
                -self.sign1 * self.root_m * half_bar / den,
                self.sign2 * self.root_m * zn.conj() * half / den,
            )
        };
        FieldValue::new(psi1, psi2)
    }

    fn exact_derivatives(&self, z: C) -> Option<ExactDerivs> {
        let n = self.n_abs();
        let nf = n as f64;
        let den = self.denom(z);
        let den2 = den * den;
        let half = Self::half_power(z, n);
        let half_bar = half.conj();
        let zn = z.powi(n as i32);
        let zn1 = z.powi(n as i32 - 1);
        let zbn = z.conj().powi(n as i32);
        let zbn1 = z.conj().powi(n as i32 - 1);
        let half_prime = 0.5 * (nf - 1.0) * Self::half_power(z, n - 2);
        let half_bar_prime = half_prime.conj();
        let c1 = if self.m > 0 {
            self.sign1 * self.root_m
        } else {
            -self.sign1 * self.root_m
        };
        let c2 = self.sign2 * self.root_m;

        if self.m > 0 {
            Some(ExactDerivs {
                d_psi1: c1 * half_bar * nf * zn1 / den2,
                db_psi1: c1 * zn * (half_bar_prime * den - half_bar * nf * zbn1 * zn) / den2,
                d_psi2: c2 * (half_prime * den - half * nf * zn1 * zbn) / den2,
                db_psi2: -c2 * half * nf * zbn1 * zn / den2,
            })
        } else {
            Some(ExactDerivs {
                d_psi1: -c1 * half_bar * nf * zn1 * zbn / den2,
                db_psi1: c1 * (half_bar_prime * den - half_bar * nf * zbn1 * zn) / den2,
                d_psi2: c2 * zbn * (half_prime * den - half * nf * zn1 * zbn) / den2,
                db_psi2: c2 * half * nf * zbn1 / den2,
            })
        }
    }

    fn singular_within(&self, z: C, clearance: f64) -> bool {
        // even m has a branch point at the origin: the field stays bounded
        // but loses derivatives, so the exclusion radius never drops below
        // the scale where FD stencils at the default step stay accurate.
        // The negative-axis cut is a pure sign discontinuity and is handled
        // by `cut_crossing`. Odd m is smooth everywhere.
        self.has_cut() && z.norm() <= clearance.max(0.02)
    }

    fn cut_crossing(&self, z: C, probe: f64) -> bool {
        self.has_cut() && z.re < 0.0 && z.im.abs() <= probe
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn m1_values_at_pinned_points() {
        let f = RationalField::new(1, PhaseInts::default()).unwrap();
        let at0 = f.eval(C::new(0.0, 0.0));
        assert_abs_diff_eq!(at0.psi1.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((at0.psi2 - C::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-15);

        let at1 = f.eval(C::new(1.0, 0.0));
        assert_abs_diff_eq!(at1.p(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn zero_m_is_degenerate() {
        assert!(RationalField::new(0, PhaseInts::default()).is_err());
    }

    #[test]
    fn negative_m_is_finite_at_origin_and_solves_the_system() {
        // the catalogued quotient cancels: m = -1 gives (-i, i z̄)/(1 + |z|²)
        let f = RationalField::new(-1, PhaseInts::default()).unwrap();
        let v = f.eval(C::new(0.0, 0.0));
        assert!((v.psi1 + C::i()).norm() < 1e-15);
        assert!(v.psi2.norm() < 1e-15);
        for &z in &[C::new(0.6, -0.3), C::new(-1.2, 0.8)] {
            let v = f.eval(z);
            let e = f.exact_derivatives(z).unwrap();
            let p = v.p();
            assert!((e.d_psi1 - p * v.psi2).norm() < 1e-13);
            assert!((e.db_psi2 + p * v.psi1).norm() < 1e-13);
        }
    }

    #[test]
    fn exact_derivatives_match_finite_differences() {
        for m in [1i64, 2, 3, -1, -2] {
            let f = RationalField::new(m, PhaseInts::default()).unwrap();
            let z = C::new(0.8, 0.6); // away from cuts and the origin
            let e = f.exact_derivatives(z).unwrap();
            let fd = crate::complex_core::sampler_derivs(&f, z, 1e-6, false).unwrap();
            for (a, b) in [
                (e.d_psi1, fd.d_psi1),
                (e.db_psi1, fd.db_psi1),
                (e.d_psi2, fd.d_psi2),
                (e.db_psi2, fd.db_psi2),
            ] {
                assert!((a - b).norm() < 1e-8, "m={m}: exact {a} vs fd {b}");
            }
        }
    }

    #[test]
    fn inversion_symmetry_of_p() {
        // p_{-m}(1/|z|) = |z|² p_m(|z|) at reciprocal points
        for m in [1i64, 2, 3] {
            let fp = RationalField::new(m, PhaseInts::default()).unwrap();
            let fm = RationalField::new(-m, PhaseInts::default()).unwrap();
            for &r in &[0.4, 0.9, 1.7, 2.6] {
                let z = C::new(r * 0.6, r * 0.8);
                let w = z / z.norm_sqr(); // |w| = 1/|z|, reciprocal point
                let lhs = fm.eval(w).p();
                let rhs = z.norm_sqr() * fp.eval(z).p();
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10 * rhs.abs().max(1.0));
            }
        }
    }

    #[test]
    fn even_m_declares_cut_and_origin() {
        let f = RationalField::new(2, PhaseInts::default()).unwrap();
        assert!(f.singular_within(C::new(0.0, 0.0), 1e-4));
        assert!(f.cut_crossing(C::new(-1.0, 0.0), 1e-5));
        assert!(f.cut_crossing(C::new(-1.0, 5e-6), 1e-5));
        assert!(!f.cut_crossing(C::new(1.0, 0.0), 1e-5));
        assert!(!f.cut_crossing(C::new(-1.0, 0.1), 1e-5));
        let f1 = RationalField::new(1, PhaseInts::default()).unwrap();
        assert!(!f1.singular_within(C::new(0.0, 0.0), 1e-4));
        let fm1 = RationalField::new(-1, PhaseInts::default()).unwrap();
        assert!(!fm1.singular_within(C::new(0.0, 0.0), 1e-4));
    }
}
