//! Residual engines for the identities attached to the Weierstrass system:
//! the system itself, its conservation law, the current, current holomorphy,
//! and the first-order differential constraints of the linear reduction.

use super::report::ResidualStats;
use crate::complex_core::{sampler_derivs, DomainGrid, FieldSampler, C, MASK_RADIUS_STEPS};
use crate::error::Error;
use crate::Result;

pub const DEFAULT_FIRST_ORDER_TOL: f64 = 1e-6;
pub const DEFAULT_NESTED_TOL: f64 = 1e-4;

/// Component residuals of the four equations
/// ∂ψ₁ - pψ₂, ∂̄ψ₂ + pψ₁ and their conjugate pair.
#[derive(Debug, Clone)]
pub struct WeResidual {
    pub eq1: ResidualStats,
    pub eq2: ResidualStats,
    pub eq1_conj: ResidualStats,
    pub eq2_conj: ResidualStats,
}

impl WeResidual {
    pub fn merged(&self) -> ResidualStats {
        ResidualStats::merged(&[self.eq1, self.eq2, self.eq1_conj, self.eq2_conj])
            .expect("nonempty components")
    }

    pub fn max_abs(&self) -> f64 {
        self.merged().max_abs
    }
}

fn masked_grid<S: FieldSampler + ?Sized>(sampler: &S, grid: &DomainGrid, h: f64) -> DomainGrid {
    let mut g = grid.clone();
    g.apply_singularity_mask(sampler, MASK_RADIUS_STEPS * h, h);
    g
}

/// Residuals of the full first-order system over the unmasked grid nodes.
/// Exact derivatives are used when the sampler provides them and
/// `use_exact` is set; finite differences of step `h` otherwise.
pub fn we_residual_with<S: FieldSampler + ?Sized>(
    sampler: &S,
    grid: &DomainGrid,
    h: f64,
    use_exact: bool,
) -> Result<WeResidual> {
    let g = masked_grid(sampler, grid, h);
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    let mut r3 = Vec::new();
    let mut r4 = Vec::new();
    for (_, _, z) in g.iter_unmasked() {
        let v = sampler.eval(z);
        let p = v.p();
        let d = match sampler_derivs(sampler, z, h, use_exact) {
            Ok(d) => d,
            Err(Error::StencilOnSingularity(_)) => continue,
            Err(e) => return Err(e),
        };
        let e1 = d.d_psi1 - p * v.psi2;
        let e2 = d.db_psi2 + p * v.psi1;
        // conjugate pair: ∂̄ψ̄₁ - pψ̄₂ = conj(∂ψ₁ - pψ₂), exactly
        let e3 = e1.conj();
        let e4 = e2.conj();
        r1.push((z, e1.norm()));
        r2.push((z, e2.norm()));
        r3.push((z, e3.norm()));
        r4.push((z, e4.norm()));
    }
    let eq1 = ResidualStats::from_samples(&r1).ok_or(Error::EmptyDomain)?;
    let eq2 = ResidualStats::from_samples(&r2).ok_or(Error::EmptyDomain)?;
    let eq1_conj = ResidualStats::from_samples(&r3).ok_or(Error::EmptyDomain)?;
    let eq2_conj = ResidualStats::from_samples(&r4).ok_or(Error::EmptyDomain)?;
    Ok(WeResidual {
        eq1,
        eq2,
        eq1_conj,
        eq2_conj,
    })
}

/// System residual with the sampler's exact derivatives when available.
pub fn we_residual<S: FieldSampler + ?Sized>(
    sampler: &S,
    grid: &DomainGrid,
    h: f64,
) -> Result<WeResidual> {
    we_residual_with(sampler, grid, h, true)
}

/// Residual of the conservation law ∂(ψ₁²) + ∂̄(ψ₂²) and its conjugate.
/// The derivatives are finite differences of the squared fields themselves,
/// independent of any closed-form derivative the sampler may carry.
pub fn conservation_residual<S: FieldSampler + ?Sized>(
    sampler: &S,
    grid: &DomainGrid,
    h: f64,
) -> Result<ResidualStats> {
    let g = masked_grid(sampler, grid, h);
    let mut samples = Vec::new();
    let ih = C::new(0.0, h);
    for (_, _, z) in g.iter_unmasked() {
        let sq = |w: C| {
            let v = sampler.eval(w);
            (v.psi1 * v.psi1, v.psi2 * v.psi2)
        };
        let (p1p, p2p) = sq(z + h);
        let (p1m, p2m) = sq(z - h);
        let (p1u, p2u) = sq(z + ih);
        let (p1d, p2d) = sq(z - ih);
        let two_h = 2.0 * h;
        let i = C::i();
        let d_sq1 = 0.5 * ((p1p - p1m) / two_h - i * (p1u - p1d) / two_h);
        let db_sq2 = 0.5 * ((p2p - p2m) / two_h + i * (p2u - p2d) / two_h);
        samples.push((z, (d_sq1 + db_sq2).norm()));
    }
    ResidualStats::from_samples(&samples).ok_or(Error::EmptyDomain)
}

/// The current j = ψ̄₁ ∂ψ₂ - ψ₂ ∂ψ̄₁ at one point. Holomorphic (and, under
/// the linear-reduction constraints, constant) for solutions of the system.
pub fn current<S: FieldSampler + ?Sized>(sampler: &S, z: C, h: f64) -> Result<C> {
    if sampler.singular_within(z, MASK_RADIUS_STEPS * h) || sampler.cut_crossing(z, h) {
        return Err(Error::StencilOnSingularity(z));
    }
    let v = sampler.eval(z);
    let d = sampler_derivs(sampler, z, h, true)?;
    // ∂ψ̄₁ = conj(∂̄ψ₁)
    Ok(v.psi1.conj() * d.d_psi2 - v.psi2 * d.db_psi1.conj())
}

/// Residual of ∂̄j over the grid by a nested finite difference: the outer
/// step is widened to keep second-difference rounding noise bounded.
pub fn current_holomorphy<S: FieldSampler + ?Sized>(
    sampler: &S,
    grid: &DomainGrid,
    h: f64,
) -> Result<ResidualStats> {
    let h2 = (30.0 * h).max(1e-4);
    // outer stencil needs extra clearance
    let mut g = grid.clone();
    g.apply_singularity_mask(sampler, MASK_RADIUS_STEPS * h + 2.0 * h2, h2 + h);
    let mut samples = Vec::new();
    for (_, _, z) in g.iter_unmasked() {
        let ih2 = C::new(0.0, h2);
        let jr = current(sampler, z + h2, h)?;
        let jl = current(sampler, z - h2, h)?;
        let ju = current(sampler, z + ih2, h)?;
        let jd = current(sampler, z - ih2, h)?;
        let i = C::i();
        let dbj = 0.5 * ((jr - jl) / (2.0 * h2) + i * (ju - jd) / (2.0 * h2));
        samples.push((z, dbj.norm()));
    }
    ResidualStats::from_samples(&samples).ok_or(Error::EmptyDomain)
}

/// Which differential constraint(s) to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintSide {
    Plus,
    Minus,
    Both,
}

/// Residual of the first-order constraint
/// ψ₁∂ψ̄₁ - εψ̄₁∂̄ψ₁ + ψ̄₂∂ψ₂ - εψ₂∂̄ψ̄₂ for ε = ±1, or of the two
/// halves separately for the simultaneous case.
pub fn constraint_residual<S: FieldSampler + ?Sized>(
    sampler: &S,
    side: ConstraintSide,
    grid: &DomainGrid,
    h: f64,
) -> Result<Vec<ResidualStats>> {
    let g = masked_grid(sampler, grid, h);
    let mut parts: Vec<Vec<(C, f64)>> = match side {
        ConstraintSide::Both => vec![Vec::new(), Vec::new()],
        _ => vec![Vec::new()],
    };
    for (_, _, z) in g.iter_unmasked() {
        let v = sampler.eval(z);
        let d = match sampler_derivs(sampler, z, h, true) {
            Ok(d) => d,
            Err(Error::StencilOnSingularity(_)) => continue,
            Err(e) => return Err(e),
        };
        let d_psi1b = d.db_psi1.conj(); // ∂ψ̄₁
        let db_psi1 = d.db_psi1;
        let d_psi2 = d.d_psi2;
        let db_psi2b = d.d_psi2.conj(); // ∂̄ψ̄₂
        // the two halves of the constraint
        let half_a = v.psi1 * d_psi1b + v.psi2.conj() * d_psi2;
        let half_b = v.psi1.conj() * db_psi1 + v.psi2 * db_psi2b;
        match side {
            ConstraintSide::Plus => parts[0].push((z, (half_a - half_b).norm())),
            ConstraintSide::Minus => parts[0].push((z, (half_a + half_b).norm())),
            ConstraintSide::Both => {
                parts[0].push((z, half_a.norm()));
                parts[1].push((z, half_b.norm()));
            }
        }
    }
    parts
        .iter()
        .map(|p| ResidualStats::from_samples(p).ok_or(Error::EmptyDomain))
        .collect()
}
