//! Potential-route construction: given a scalar potential g(z, z̄) with
//! Wirtinger derivatives, the fields
//!
//! ```text
//! ψ₁ = ±(∂̄g)^{1/2},   ψ₂ = ±i(∂g)^{1/2}
//! ```
//!
//! solve the Weierstrass system whenever g solves the associated
//! second-order potential equation. The square roots are pointwise
//! principal-branch; branch jumps are reported through `cut_crossing`, and
//! the verification gate adjudicates whether a given g actually works.

use super::phase::PhaseInts;
use crate::complex_core::{wirtinger, FieldSampler, FieldValue, C};
use crate::error::Error;
use crate::Result;
use std::sync::Arc;

type ScalarFn = Arc<dyn Fn(C) -> C + Send + Sync>;
type PairFn = Arc<dyn Fn(C) -> (C, C) + Send + Sync>;

/// How the potential's derivatives are supplied.
#[derive(Clone)]
pub enum PotentialInput {
    /// Closed-form (∂g, ∂̄g).
    ClosedDerivatives(PairFn),
    /// The potential itself; derivatives fall back to central differences of
    /// step `h`.
    Sampled { g: ScalarFn, h: f64 },
}

impl PotentialInput {
    pub fn closed<F>(dg_dbg: F) -> Self
    where
        F: Fn(C) -> (C, C) + Send + Sync + 'static,
    {
        Self::ClosedDerivatives(Arc::new(dg_dbg))
    }

    pub fn sampled<F>(g: F, h: f64) -> Self
    where
        F: Fn(C) -> C + Send + Sync + 'static,
    {
        Self::Sampled {
            g: Arc::new(g),
            h,
        }
    }

    fn derivatives(&self, z: C) -> (C, C) {
        match self {
            Self::ClosedDerivatives(f) => f(z),
            Self::Sampled { g, h } => {
                let g = Arc::clone(g);
                wirtinger(move |w| g(w), z, *h)
            }
        }
    }
}

#[derive(Clone)]
pub struct PotentialField {
    input: PotentialInput,
    sign1: f64,
    sign2: f64,
    /// additional declared singular points (poles of g), if any
    poles: Vec<C>,
}

impl PotentialField {
    pub fn new(input: PotentialInput, phases: PhaseInts, poles: Vec<C>) -> Self {
        Self {
            input,
            sign1: phases.sign1(),
            sign2: phases.sign2(),
            poles,
        }
    }

    /// The rational potential g = -z^m/(1 + |z|^{2m}) with closed-form
    /// derivatives, for cross-checking the rational family.
    pub fn rational_g(m: i64, phases: PhaseInts) -> Result<Self> {
        if m == 0 {
            return Err(Error::DegenerateFamily("potential rational-g needs m != 0".into()));
        }
        let mi = m as i32;
        let mf = m as f64;
        let input = PotentialInput::closed(move |z: C| {
            let den = 1.0 + z.norm().powi(2 * mi);
            let den2 = den * den;
            let dg = -mf * z.powi(mi - 1) / den2;
            let dbg = mf * z.powi(2 * mi) * z.conj().powi(mi - 1) / den2;
            (dg, dbg)
        });
        let poles = if m < 0 || m % 2 == 0 {
            vec![C::new(0.0, 0.0)]
        } else {
            vec![]
        };
        Ok(Self::new(input, phases, poles))
    }

    /// The two-pole potential behind the one-soliton family, with
    /// closed-form derivatives
    /// ∂g = -(a-b)²(z̄-b)²/Q², ∂̄g = (a-b)²(z-a)²/Q².
    pub fn soliton_g(a: f64, b: f64, phases: PhaseInts) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateFamily("potential soliton-g needs a != b".into()));
        }
        let d2 = (a - b) * (a - b);
        let input = PotentialInput::closed(move |z: C| {
            let q = (z - a).norm_sqr() + (z - b).norm_sqr();
            let q2 = q * q;
            let zb = z.conj();
            let dg = -d2 * (zb - b) * (zb - b) / q2;
            let dbg = d2 * (z - a) * (z - a) / q2;
            (dg, dbg)
        });
        Ok(Self::new(input, phases, vec![]))
    }
}

impl FieldSampler for PotentialField {
    fn eval(&self, z: C) -> FieldValue {
        let (dg, dbg) = self.input.derivatives(z);
        let psi1 = self.sign1 * dbg.sqrt();
        let psi2 = self.sign2 * C::i() * dg.sqrt();
        FieldValue::new(psi1, psi2)
    }

    fn singular_within(&self, z: C, clearance: f64) -> bool {
        self.poles.iter().any(|p| (z - p).norm() <= clearance)
    }

    fn cut_crossing(&self, z: C, probe: f64) -> bool {
        // principal-branch jump of either square root across the stencil
        let (dg0, dbg0) = self.input.derivatives(z);
        let (r1, r2) = (dbg0.sqrt(), dg0.sqrt());
        for dz in [
            C::new(probe, 0.0),
            C::new(-probe, 0.0),
            C::new(0.0, probe),
            C::new(0.0, -probe),
        ] {
            let (dg, dbg) = self.input.derivatives(z + dz);
            let (s1, s2) = (dbg.sqrt(), dg.sqrt());
            if (s1 + r1).norm() < (s1 - r1).norm() || (s2 + r2).norm() < (s2 - r2).norm() {
                return true;
            }
        }
        false
    }
}

/// Construct the potential-route sampler. Kept as a free function to mirror
/// the other family constructors.
pub fn from_potential(input: PotentialInput, phases: PhaseInts) -> PotentialField {
    PotentialField::new(input, phases, vec![])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{OneSolitonField, RationalField, SolitonParams};
    use approx::assert_abs_diff_eq;

    #[test]
    fn trivial_linear_potential() {
        // g(z) = z: ∂g = 1, ∂̄g = 0 → ψ₁ = 0, ψ₂ = ±i
        let f = from_potential(
            PotentialInput::sampled(|z: C| z, 1e-5),
            PhaseInts::default(),
        );
        let v = f.eval(C::new(0.4, -0.3));
        assert!(v.psi1.norm() < 1e-10);
        assert!((v.psi2 - C::i()).norm() < 1e-10);
    }

    #[test]
    fn soliton_g_closed_derivatives_match_fd_of_g() {
        // literal transcription of the two-pole potential
        let (a, b) = (1.0, -1.0);
        let d2 = (a - b) * (a - b);
        let g = move |z: C| {
            let two = 2.0 * z - (a + b);
            let d1 = (-(two) * z.conj() + (z - a) * a + (z - b) * b) * two;
            d2 * (z - a) * (z - a) / d1 + d2 / (2.0 * two)
        };
        let pf = PotentialField::soliton_g(a, b, PhaseInts::default()).unwrap();
        for &z in &[C::new(0.4, 0.7), C::new(-0.9, 0.3), C::new(1.6, -1.1)] {
            let (dg_c, dbg_c) = match &pf.input {
                PotentialInput::ClosedDerivatives(f) => f(z),
                _ => unreachable!(),
            };
            let (dg_fd, dbg_fd) = wirtinger(g, z, 1e-6);
            assert!((dg_c - dg_fd).norm() < 1e-7, "dg at {z}: {dg_c} vs {dg_fd}");
            assert!((dbg_c - dbg_fd).norm() < 1e-7, "dbg at {z}: {dbg_c} vs {dbg_fd}");
        }
    }

    #[test]
    fn rational_g_reproduces_rational_family_moduli() {
        for m in [1i64, 2] {
            let pot = PotentialField::rational_g(m, PhaseInts::default()).unwrap();
            let dir = RationalField::new(m, PhaseInts::default()).unwrap();
            for &z in &[C::new(0.7, 0.2), C::new(1.3, -0.5), C::new(0.1, 1.9)] {
                let a = pot.eval(z);
                let b = dir.eval(z);
                assert_abs_diff_eq!(a.psi1.norm(), b.psi1.norm(), epsilon = 1e-10);
                assert_abs_diff_eq!(a.psi2.norm(), b.psi2.norm(), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn soliton_g_reproduces_one_soliton_moduli() {
        let pot = PotentialField::soliton_g(1.0, -1.0, PhaseInts::default()).unwrap();
        let dir = OneSolitonField::new(SolitonParams::new(1.0, -1.0).unwrap(), PhaseInts::default());
        for &z in &[C::new(0.7, 0.2), C::new(-1.3, 0.5), C::new(0.1, -1.9)] {
            let a = pot.eval(z);
            let b = dir.eval(z);
            assert_abs_diff_eq!(a.psi1.norm(), b.psi1.norm(), epsilon = 1e-10);
            assert_abs_diff_eq!(a.psi2.norm(), b.psi2.norm(), epsilon = 1e-10);
        }
    }
}
