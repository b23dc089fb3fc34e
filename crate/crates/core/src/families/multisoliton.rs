//! Algebraic multi-soliton family with N pole pairs (a_j, b_j), all real.
//!
//! With P(z) = ∏ (z-a_j)/(z-b_j) and
//! S(z) = Σ_s (z-b_s)^{-1} [ ∏_{j≠s} (z-a_j)/(z-b_j) - P(z) ], the fields are
//!
//! ```text
//! ψ₁ = ± P(z) · S(z̄)^{1/2} / (1 + |P(z)|²),
//! ψ₂ = ±        S(z)^{1/2} / (1 + |P(z)|²),
//! ```
//!
//! with principal-branch square roots. The singular set consists of the
//! poles z = b_j, the zeros of S (branch points), and the curves where the
//! principal branch of √S jumps; the last are detected pointwise with the
//! joint sign-flip probe. For N = 1 this reduces to
//! ψ₁ = √(a-b)(z-a)/Q, ψ₂ = √(a-b)(z̄-b)/Q, which passes the residual gate.

use super::phase::PhaseInts;
use crate::complex_core::{FieldSampler, FieldValue, C};
use crate::error::Error;
use crate::Result;

/// Clearance around the zeros of S, where √S loses a derivative and FD
/// stencils say nothing useful. Sized for the default gate (step 1e-5,
/// tolerance 1e-6): truncation ~ h²·|S|^{1/2}/d³ stays below 1e-6 for
/// zero-distance d above this. The distance is estimated by the Newton
/// quotient |S/S'| (S is holomorphic), which also shrinks near the poles
/// z = b_j and stays O(|z|) in the decaying far field.
const ZERO_CLEARANCE: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct MultiSolitonField {
    a: Vec<f64>,
    b: Vec<f64>,
    sign1: f64,
    sign2: f64,
}

impl MultiSolitonField {
    pub fn new(a: Vec<f64>, b: Vec<f64>, phases: PhaseInts) -> Result<Self> {
        if a.is_empty() || a.len() != b.len() {
            return Err(Error::DegenerateFamily(
                "multi-soliton needs equal, nonempty pole lists".into(),
            ));
        }
        for (aj, bj) in a.iter().zip(&b) {
            if !aj.is_finite() || !bj.is_finite() {
                return Err(Error::BadParams("multi-soliton poles must be finite".into()));
            }
            if aj == bj {
                return Err(Error::DegenerateFamily(
                    "multi-soliton needs a_j != b_j for all j".into(),
                ));
            }
        }
        Ok(Self {
            a,
            b,
            sign1: phases.sign1(),
            sign2: phases.sign2(),
        })
    }

    fn product(&self, z: C) -> C {
        let mut p = C::new(1.0, 0.0);
        for (aj, bj) in self.a.iter().zip(&self.b) {
            p *= (z - aj) / (z - bj);
        }
        p
    }

    /// The bracketed sum S evaluated at `z`.
    pub fn bracket_sum(&self, z: C) -> C {
        let p = self.product(z);
        let mut s = C::new(0.0, 0.0);
        for (idx, bs) in self.b.iter().enumerate() {
            let mut partial = C::new(1.0, 0.0);
            for (j, (aj, bj)) in self.a.iter().zip(&self.b).enumerate() {
                if j != idx {
                    partial *= (z - aj) / (z - bj);
                }
            }
            s += (partial - p) / (z - bs);
        }
        s
    }

    fn root_s(&self, z: C) -> C {
        self.bracket_sum(z).sqrt()
    }
}

impl FieldSampler for MultiSolitonField {
    fn eval(&self, z: C) -> FieldValue {
        let p = self.product(z);
        let den = 1.0 + p.norm_sqr();
        // S(z̄) = conj(S(z)) for real pole data, so √(S(z̄)) is evaluated as
        // conj(√(S(z))): one square root drives both components, which keeps
        // their relative sign consistent even on the branch cut itself.
        let root = self.root_s(z);
        let psi1 = self.sign1 * p * root.conj() / den;
        let psi2 = self.sign2 * root / den;
        FieldValue::new(psi1, psi2)
    }

    fn singular_within(&self, z: C, clearance: f64) -> bool {
        for bj in &self.b {
            if (z - bj).norm() <= clearance {
                return true;
            }
        }
        // Newton estimate of the distance to the nearest zero of S
        let delta = 1e-4;
        let s = self.bracket_sum(z);
        let sprime = (self.bracket_sum(z + delta) - self.bracket_sum(z - delta)) / (2.0 * delta);
        if sprime.norm() == 0.0 {
            return false;
        }
        s.norm() / sprime.norm() < ZERO_CLEARANCE.max(clearance)
    }

    fn cut_crossing(&self, z: C, probe: f64) -> bool {
        let here = self.root_s(z);
        for dz in [
            C::new(probe, 0.0),
            C::new(-probe, 0.0),
            C::new(0.0, probe),
            C::new(0.0, -probe),
        ] {
            let there = self.root_s(z + dz);
            if (there + here).norm() < (there - here).norm() {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn n1_reduces_to_rescaled_soliton() {
        let f = MultiSolitonField::new(vec![1.0], vec![-1.0], PhaseInts::default()).unwrap();
        let z = C::new(0.5, 0.8);
        let q = (z - 1.0).norm_sqr() + (z + 1.0).norm_sqr();
        let expect1 = 2.0_f64.sqrt() * (z - 1.0) / q;
        let expect2 = 2.0_f64.sqrt() * (z.conj() + 1.0) / q;
        let v = f.eval(z);
        // up to a joint sign from the principal branch
        let direct = (v.psi1 - expect1).norm() + (v.psi2 - expect2).norm();
        let flipped = (v.psi1 + expect1).norm() + (v.psi2 + expect2).norm();
        assert!(direct.min(flipped) < 1e-12);
    }

    #[test]
    fn finite_away_from_poles() {
        let f = MultiSolitonField::new(vec![1.0], vec![-1.0], PhaseInts::default()).unwrap();
        let v = f.eval(C::new(0.0, 2.0));
        assert!(v.psi1.is_finite() && v.psi2.is_finite());
        assert!(v.p() > 0.0);
    }

    #[test]
    fn modulus_ratio_structure() {
        // |ψ₁/ψ₂| = |P(z)| since |S(z̄)| = |S(z)| for real pole data
        let f = MultiSolitonField::new(vec![1.0], vec![-1.0], PhaseInts::default()).unwrap();
        let z = C::new(3.0, 0.0);
        let v = f.eval(z);
        let ratio = v.psi1.norm() / v.psi2.norm();
        let expect = ((z - 1.0) / (z + 1.0)).norm() * {
            let s = f.bracket_sum(z.conj()).norm() / f.bracket_sum(z).norm();
            s.sqrt()
        };
        assert_abs_diff_eq!(ratio, expect, epsilon = 1e-12);
    }

    #[test]
    fn empty_pole_list_is_degenerate() {
        assert!(MultiSolitonField::new(vec![], vec![], PhaseInts::default()).is_err());
    }

    #[test]
    fn cut_detector_fires_across_the_branch_line() {
        // For N=1 with b = -1, arg S = -2 arg(z+1) wraps across Re z = -1.
        let f = MultiSolitonField::new(vec![1.0], vec![-1.0], PhaseInts::default()).unwrap();
        assert!(f.cut_crossing(C::new(-1.0 + 1e-6, 1.0), 1e-5));
        assert!(!f.cut_crossing(C::new(0.5, 0.5), 1e-5));
    }
}
