use num_complex::Complex64;

/// Working complex scalar for the whole crate.
pub type C = Complex64;

/// Value of the two-component field at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValue {
    pub psi1: C,
    pub psi2: C,
}

impl FieldValue {
    pub fn new(psi1: C, psi2: C) -> Self {
        Self { psi1, psi2 }
    }

    /// p = |ψ₁|² + |ψ₂|², the conformal metric factor.
    pub fn p(&self) -> f64 {
        self.psi1.norm_sqr() + self.psi2.norm_sqr()
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.psi1, -self.psi2)
    }
}

/// Exact Wirtinger derivatives of both components, when a family has them in
/// closed form. Derivatives of the conjugate fields follow from
/// ∂ψ̄ = conj(∂̄ψ) and ∂̄ψ̄ = conj(∂ψ).
#[derive(Debug, Clone, Copy)]
pub struct ExactDerivs {
    pub d_psi1: C,
    pub db_psi1: C,
    pub d_psi2: C,
    pub db_psi2: C,
}

/// A deterministic evaluator for a candidate solution (ψ₁, ψ₂) of the
/// Weierstrass system. Conjugate fields are obtained by conjugating the
/// output, never stored separately.
///
/// Implementations are immutable values; evaluation is pure and safe to call
/// concurrently.
pub trait FieldSampler: Send + Sync {
    fn eval(&self, z: C) -> FieldValue;

    /// Closed-form derivatives when available; verification falls back to
    /// finite differences otherwise.
    fn exact_derivatives(&self, _z: C) -> Option<ExactDerivs> {
        None
    }

    /// True when `z` lies within `clearance` of the singular set (poles,
    /// branch points, branch-cut bands). Grid masking queries this with the
    /// standard clearance of ten FD steps.
    fn singular_within(&self, _z: C, _clearance: f64) -> bool {
        false
    }

    /// True when a branch-cut discontinuity passes between `z` and one of the
    /// four stencil offsets `z ± probe`, `z ± i·probe`. Families built from
    /// pointwise principal-branch square roots override this with a joint
    /// sign-flip detector.
    fn cut_crossing(&self, _z: C, _probe: f64) -> bool {
        false
    }

    /// Evaluate with joint-sign branch continuation: returns whichever of
    /// ±(ψ₁, ψ₂) lies closer to `reference`. Both components flip together,
    /// which matches square-root families where the two components share
    /// their double-valuedness.
    fn eval_continued(&self, z: C, reference: &FieldValue) -> FieldValue {
        let v = self.eval(z);
        let keep = (v.psi1 - reference.psi1).norm_sqr() + (v.psi2 - reference.psi2).norm_sqr();
        let flip = (v.psi1 + reference.psi1).norm_sqr() + (v.psi2 + reference.psi2).norm_sqr();
        if flip < keep {
            v.neg()
        } else {
            v
        }
    }
}

impl<T: FieldSampler + ?Sized> FieldSampler for &T {
    fn eval(&self, z: C) -> FieldValue {
        (**self).eval(z)
    }
    fn exact_derivatives(&self, z: C) -> Option<ExactDerivs> {
        (**self).exact_derivatives(z)
    }
    fn singular_within(&self, z: C, clearance: f64) -> bool {
        (**self).singular_within(z, clearance)
    }
    fn cut_crossing(&self, z: C, probe: f64) -> bool {
        (**self).cut_crossing(z, probe)
    }
}

impl FieldSampler for Box<dyn FieldSampler> {
    fn eval(&self, z: C) -> FieldValue {
        self.as_ref().eval(z)
    }
    fn exact_derivatives(&self, z: C) -> Option<ExactDerivs> {
        self.as_ref().exact_derivatives(z)
    }
    fn singular_within(&self, z: C, clearance: f64) -> bool {
        self.as_ref().singular_within(z, clearance)
    }
    fn cut_crossing(&self, z: C, probe: f64) -> bool {
        self.as_ref().cut_crossing(z, probe)
    }
}

/// Wrapper that hides a sampler's exact derivatives, forcing the
/// finite-difference path in verification. Used by tests that exercise the
/// FD oracle on families that also carry closed-form derivatives.
pub struct FdOnly<S>(pub S);

impl<S: FieldSampler> FieldSampler for FdOnly<S> {
    fn eval(&self, z: C) -> FieldValue {
        self.0.eval(z)
    }
    fn singular_within(&self, z: C, clearance: f64) -> bool {
        self.0.singular_within(z, clearance)
    }
    fn cut_crossing(&self, z: C, probe: f64) -> bool {
        self.0.cut_crossing(z, probe)
    }
}
