//! Field reconstruction by marching the eight first-order equations of the
//! constrained (linearized) system:
//!
//! ```text
//! ∂ψ₁ = pψ₂                     ∂ψ₂ = (ṗψ₂ + jψ₁)/p
//! ∂̄ψ₁ = (εṗψ₁ - j̄ψ₂)/p        ∂̄ψ₂ = -pψ₁
//! ∂ψ̄₁ = (ṗψ̄₁ - jψ̄₂)/p        ∂ψ̄₂ = -pψ̄₁
//! ∂̄ψ̄₁ = pψ̄₂                   ∂̄ψ̄₂ = (εṗψ̄₂ + j̄ψ̄₁)/p
//! ```
//!
//! where p = p(s) is a profile of the real line coordinate s (s = 2x for
//! ε = +1, s = 2y for ε = -1, matching z + εz̄ up to the factor i in the
//! second case), ṗ above denotes the Wirtinger derivative ∂p (which picks up
//! a factor -i for ε = -1), and j is a complex constant with |j|² = A.
//!
//! Construction marches RK4 along the real axis from the base point, then up
//! and down each grid column; the resulting sampler interpolates node values
//! bilinearly. The four fields are marched as independent complex unknowns;
//! the extent to which ψ̄ᵢ stays conjugate to ψᵢ is a quality metric, not an
//! input constraint.

use crate::complex_core::{DomainGrid, FieldSampler, FieldValue, C};
use crate::error::Error;
use crate::Result;
use std::sync::Arc;

/// Profile p(s) with its derivative, as a real-argument callback.
#[derive(Clone)]
pub struct PProfile {
    eval: Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>,
}

impl PProfile {
    pub fn new<F>(eval: F) -> Self
    where
        F: Fn(f64) -> (f64, f64) + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
        }
    }

    pub fn constant(p0: f64) -> Self {
        Self::new(move |_| (p0, 0.0))
    }

    pub fn p(&self, s: f64) -> f64 {
        (self.eval)(s).0
    }

    pub fn pdot(&self, s: f64) -> f64 {
        (self.eval)(s).1
    }

    /// Residual of the second-order profile equation
    /// p̈ - ṗ²/p + εA/p - εp³ on a sample of the range, with p̈ from a
    /// central difference of ṗ.
    pub fn profile_residual(&self, eps: f64, a_const: f64, s_min: f64, s_max: f64) -> f64 {
        let n = 41;
        let h = 1e-5;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let s = s_min + (s_max - s_min) * i as f64 / (n - 1) as f64;
            let (p, pd) = (self.eval)(s);
            let pdd = ((self.eval)(s + h).1 - (self.eval)(s - h).1) / (2.0 * h);
            worst = worst.max((pdd - pd * pd / p + eps * a_const / p - eps * p * p * p).abs());
        }
        worst
    }
}

/// Four complex fields marched together.
#[derive(Debug, Clone, Copy)]
struct State {
    psi1: C,
    psi2: C,
    psi1_bar: C,
    psi2_bar: C,
}

impl State {
    fn rk4_update(y0: &State, a: &State, b: &State, c: &State, d: &State, h: f64) -> State {
        State {
            psi1: y0.psi1 + h / 6.0 * (a.psi1 + 2.0 * b.psi1 + 2.0 * c.psi1 + d.psi1),
            psi2: y0.psi2 + h / 6.0 * (a.psi2 + 2.0 * b.psi2 + 2.0 * c.psi2 + d.psi2),
            psi1_bar: y0.psi1_bar
                + h / 6.0 * (a.psi1_bar + 2.0 * b.psi1_bar + 2.0 * c.psi1_bar + d.psi1_bar),
            psi2_bar: y0.psi2_bar
                + h / 6.0 * (a.psi2_bar + 2.0 * b.psi2_bar + 2.0 * c.psi2_bar + d.psi2_bar),
        }
    }
}

/// Reconstructed field on a grid.
pub struct LinearizedField {
    grid: DomainGrid,
    values: Vec<FieldValue>,
    /// max |conj(ψᵢ) - ψ̄ᵢ| accumulated during marching
    pub conjugation_defect: f64,
}

pub struct LinearizedConfig {
    pub eps: f64,
    pub current: C,
    pub seed: (C, C, C, C),
    pub base: C,
    pub substep: f64,
    /// residual gate for the profile equation precondition
    pub profile_gate: f64,
    /// |j|² must equal this within the gate (the A constant)
    pub a_const: f64,
}

impl Default for LinearizedConfig {
    fn default() -> Self {
        Self {
            eps: 1.0,
            current: C::new(0.0, 0.0),
            seed: (
                C::new(1.0, 0.0),
                C::new(0.0, 1.0),
                C::new(1.0, 0.0),
                C::new(0.0, -1.0),
            ),
            base: C::new(0.0, 0.0),
            substep: 1e-3,
            profile_gate: 1e-8,
            a_const: 0.0,
        }
    }
}

/// March the linearized system over the grid. The profile must satisfy its
/// second-order equation to `profile_gate` over the spanned s-range, the
/// seed must satisfy |ψ₁|² + |ψ₂|² = p(s₀) to 1e-10, and p must stay
/// positive along the way.
pub fn integrate_linearized(
    profile: &PProfile,
    cfg: &LinearizedConfig,
    grid: &DomainGrid,
) -> Result<LinearizedField> {
    if cfg.eps != 1.0 && cfg.eps != -1.0 {
        return Err(Error::BadParams("eps must be +1 or -1".into()));
    }
    let s_of = |z: C| -> f64 {
        if cfg.eps > 0.0 {
            2.0 * z.re
        } else {
            2.0 * z.im
        }
    };
    // ∂s/∂z: 1 for ε=+1 (s = z+z̄), -i for ε=-1 (s = -i(z-z̄))
    let ds_dz = if cfg.eps > 0.0 {
        C::new(1.0, 0.0)
    } else {
        C::new(0.0, -1.0)
    };

    // profile precondition over the spanned range
    let corners = [
        s_of(C::new(grid.xmin, grid.ymin)),
        s_of(C::new(grid.xmax, grid.ymax)),
        s_of(cfg.base),
    ];
    let s_lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
    let s_hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let resid = profile.profile_residual(cfg.eps, cfg.a_const, s_lo, s_hi);
    if resid > cfg.profile_gate {
        return Err(Error::BadParams(format!(
            "profile fails its equation: residual {resid:.3e} > gate {:.3e}",
            cfg.profile_gate
        )));
    }

    // seed consistency |ψ₁|² + |ψ₂|² = p(s₀)
    let p0 = profile.p(s_of(cfg.base));
    let seed_p = cfg.seed.0.norm_sqr() + cfg.seed.1.norm_sqr();
    if (seed_p - p0).abs() > 1e-10 {
        return Err(Error::InconsistentSeed((seed_p - p0).abs()));
    }

    let j = cfg.current;
    let jb = j.conj();
    // Wirtinger RHS of the eight equations at position z
    let rhs = |z: C, y: &State, direction_x: bool| -> Result<State> {
        let s = s_of(z);
        let p = profile.p(s);
        if !(p.is_finite() && p > 1e-9 && p < 1e6) {
            return Err(Error::ProfileVanishes(s));
        }
        let pdot = profile.pdot(s) * ds_dz; // Wirtinger ∂p
        let eps = cfg.eps;
        let d_psi1 = p * y.psi2;
        let db_psi1 = (eps * pdot * y.psi1 - jb * y.psi2) / p;
        let d_psi2 = (pdot * y.psi2 + j * y.psi1) / p;
        let db_psi2 = -p * y.psi1;
        let d_psi1b = (pdot * y.psi1_bar - j * y.psi2_bar) / p;
        let db_psi1b = p * y.psi2_bar;
        let d_psi2b = -p * y.psi1_bar;
        let db_psi2b = (eps * pdot * y.psi2_bar + jb * y.psi1_bar) / p;
        // d/dx = ∂ + ∂̄ ; d/dy = i(∂ - ∂̄)
        let (c1, c2) = if direction_x {
            (C::new(1.0, 0.0), C::new(1.0, 0.0))
        } else {
            (C::i(), -C::i())
        };
        Ok(State {
            psi1: c1 * d_psi1 + c2 * db_psi1,
            psi2: c1 * d_psi2 + c2 * db_psi2,
            psi1_bar: c1 * d_psi1b + c2 * db_psi1b,
            psi2_bar: c1 * d_psi2b + c2 * db_psi2b,
        })
    };

    // RK4 march from `from` to `to` along one axis
    let march = |mut z: C, target: f64, along_x: bool, mut y: State| -> Result<(C, State)> {
        let coord = |z: C| if along_x { z.re } else { z.im };
        let advance = |z: C, d: f64| {
            if along_x {
                C::new(z.re + d, z.im)
            } else {
                C::new(z.re, z.im + d)
            }
        };
        let total = target - coord(z);
        if total == 0.0 {
            return Ok((z, y));
        }
        let nsteps = (total.abs() / cfg.substep).ceil().max(1.0) as usize;
        let h = total / nsteps as f64;
        for _ in 0..nsteps {
            let k1 = rhs(z, &y, along_x)?;
            let y2 = State {
                psi1: y.psi1 + 0.5 * h * k1.psi1,
                psi2: y.psi2 + 0.5 * h * k1.psi2,
                psi1_bar: y.psi1_bar + 0.5 * h * k1.psi1_bar,
                psi2_bar: y.psi2_bar + 0.5 * h * k1.psi2_bar,
            };
            let zm = advance(z, 0.5 * h);
            let k2 = rhs(zm, &y2, along_x)?;
            let y3 = State {
                psi1: y.psi1 + 0.5 * h * k2.psi1,
                psi2: y.psi2 + 0.5 * h * k2.psi2,
                psi1_bar: y.psi1_bar + 0.5 * h * k2.psi1_bar,
                psi2_bar: y.psi2_bar + 0.5 * h * k2.psi2_bar,
            };
            let k3 = rhs(zm, &y3, along_x)?;
            let y4 = State {
                psi1: y.psi1 + h * k3.psi1,
                psi2: y.psi2 + h * k3.psi2,
                psi1_bar: y.psi1_bar + h * k3.psi1_bar,
                psi2_bar: y.psi2_bar + h * k3.psi2_bar,
            };
            let zn = advance(z, h);
            let k4 = rhs(zn, &y4, along_x)?;
            y = State::rk4_update(&y, &k1, &k2, &k3, &k4, h);
            z = zn;
        }
        Ok((z, y))
    };

    let seed = State {
        psi1: cfg.seed.0,
        psi2: cfg.seed.1,
        psi1_bar: cfg.seed.2,
        psi2_bar: cfg.seed.3,
    };

    // to the base row level first
    let (_, at_row0) = march(
        cfg.base,
        grid.ymin,
        false,
        march(cfg.base, cfg.base.re, true, seed)?.1,
    )?;
    // base column position: nearest grid x to base
    let mut values = vec![FieldValue::new(C::new(0.0, 0.0), C::new(0.0, 0.0)); grid.nx * grid.ny];
    let mut defect: f64 = 0.0;
    // march along the bottom row from base.x, then up each column
    let mut row_state = at_row0;
    let mut row_z = C::new(cfg.base.re, grid.ymin);
    // left-to-right sweep starting at the column nearest the base
    let start_col = ((cfg.base.re - grid.xmin) / grid.dx()).round().clamp(0.0, (grid.nx - 1) as f64)
        as usize;
    // march to the exact starting column x first
    let (z0, s0) = march(row_z, grid.node(start_col, 0).re, true, row_state)?;
    row_z = z0;
    row_state = s0;
    // record a column by marching vertically from its bottom node
    let mut record_column = |col: usize, bottom: State| -> Result<()> {
        let mut st = bottom;
        let mut z = grid.node(col, 0);
        for j in 0..grid.ny {
            let target = grid.node(col, j);
            let (zn, stn) = march(z, target.im, false, st)?;
            z = zn;
            st = stn;
            values[j * grid.nx + col] = FieldValue::new(st.psi1, st.psi2);
            let d = (st.psi1.conj() - st.psi1_bar)
                .norm()
                .max((st.psi2.conj() - st.psi2_bar).norm());
            defect = defect.max(d);
        }
        Ok(())
    };

    record_column(start_col, row_state)?;
    // sweep right
    let mut z = row_z;
    let mut st = row_state;
    for col in start_col + 1..grid.nx {
        let (zn, stn) = march(z, grid.node(col, 0).re, true, st)?;
        z = zn;
        st = stn;
        record_column(col, st)?;
    }
    // sweep left
    let mut z = row_z;
    let mut st = row_state;
    for col in (0..start_col).rev() {
        let (zn, stn) = march(z, grid.node(col, 0).re, true, st)?;
        z = zn;
        st = stn;
        record_column(col, st)?;
    }

    Ok(LinearizedField {
        grid: grid.clone(),
        values,
        conjugation_defect: defect,
    })
}

impl FieldSampler for LinearizedField {
    fn eval(&self, z: C) -> FieldValue {
        // bilinear interpolation between nodes; clamped to the grid
        let fx = ((z.re - self.grid.xmin) / self.grid.dx()).clamp(0.0, (self.grid.nx - 1) as f64);
        let fy = ((z.im - self.grid.ymin) / self.grid.dy()).clamp(0.0, (self.grid.ny - 1) as f64);
        let i0 = (fx.floor() as usize).min(self.grid.nx - 2);
        let j0 = (fy.floor() as usize).min(self.grid.ny - 2);
        let tx = fx - i0 as f64;
        let ty = fy - j0 as f64;
        let at = |i: usize, j: usize| &self.values[j * self.grid.nx + i];
        let lerp = |a: C, b: C, t: f64| a * (1.0 - t) + b * t;
        let v00 = at(i0, j0);
        let v10 = at(i0 + 1, j0);
        let v01 = at(i0, j0 + 1);
        let v11 = at(i0 + 1, j0 + 1);
        let psi1 = lerp(
            lerp(v00.psi1, v10.psi1, tx),
            lerp(v01.psi1, v11.psi1, tx),
            ty,
        );
        let psi2 = lerp(
            lerp(v00.psi2, v10.psi2, tx),
            lerp(v01.psi2, v11.psi2, tx),
            ty,
        );
        FieldValue::new(psi1, psi2)
    }

    fn singular_within(&self, z: C, clearance: f64) -> bool {
        z.re < self.grid.xmin + clearance
            || z.re > self.grid.xmax - clearance
            || z.im < self.grid.ymin + clearance
            || z.im > self.grid.ymax - clearance
    }
}
