//! Conformal immersion by contour integration of the three 1-forms
//!
//! ```text
//! X₁ + iX₂ = 2i ∫ (ψ̄₁² dz' - ψ̄₂² dz̄'),
//! X₁ - iX₂ = 2i ∫ (ψ₂² dz' - ψ₁² dz̄'),
//! X₃      = -2 ∫ (ψ̄₁ψ₂ dz' + ψ₁ψ̄₂ dz̄'),
//! ```
//!
//! together with the metric factor p = |ψ₁|² + |ψ₂|² and the Gaussian
//! curvature K = -p⁻² ∂∂̄ ln p, evaluated through ∂∂̄ = ¼(∂ₓₓ + ∂_yy)
//! with a five-point stencil on p itself (off-grid samples, independent of
//! the patch spacing).
//!
//! Patch integration walks a BFS spanning tree of the unmasked grid graph,
//! accumulating one straight-segment integral per edge; branch-cut families
//! are evaluated with joint-sign continuation along each segment. The
//! maximum circulation of the three 1-forms around grid plaquettes is the
//! patch's `imag_leakage`: it vanishes (to quadrature error) exactly when
//! the integrals are path independent, i.e. when the field satisfies the
//! conservation law, and is the operative signal that a field is not a
//! solution.

use crate::complex_core::{DomainGrid, FieldSampler, PathPolyline, C};
use crate::error::Error;
use crate::Result;
use std::collections::VecDeque;

/// Default FD step for the curvature stencil: small enough for 1e-4
/// curvature accuracy, large enough to dominate rounding in ln p.
pub const CURVATURE_FD_STEP: f64 = 2e-4;

const GL16_X: [f64; 8] = [
    0.095_012_509_837_637_440_185,
    0.281_603_550_779_258_913_230,
    0.458_016_777_657_227_386_342,
    0.617_876_244_402_643_748_447,
    0.755_404_408_355_003_033_895,
    0.865_631_202_387_831_743_880,
    0.944_575_023_073_232_576_078,
    0.989_400_934_991_649_932_596,
];
const GL16_W: [f64; 8] = [
    0.189_450_610_455_068_496_285,
    0.182_603_415_044_923_588_867,
    0.169_156_519_395_002_538_189,
    0.149_595_988_816_576_732_082,
    0.124_628_971_255_533_872_052,
    0.095_158_511_682_492_784_810,
    0.062_253_523_938_647_892_863,
    0.027_152_459_411_754_094_852,
];

/// The three accumulated integrals along a path.
#[derive(Debug, Clone, Copy, Default)]
struct Forms {
    a: C,  // X₁ + iX₂
    b: C,  // X₁ - iX₂
    x3: C, // X₃ (complex until realized)
}

impl Forms {
    fn add(&self, o: &Forms) -> Forms {
        Forms {
            a: self.a + o.a,
            b: self.b + o.b,
            x3: self.x3 + o.x3,
        }
    }

    fn norm(&self) -> f64 {
        self.a.norm().max(self.b.norm()).max(self.x3.norm())
    }

    fn realize(&self) -> ([f64; 3], f64) {
        let leak = (self.a - self.b.conj()).norm().max(self.x3.im.abs());
        let x1 = 0.5 * (self.a.re + self.b.re);
        let x2 = 0.5 * (self.a.im - self.b.im);
        ([x1, x2, self.x3.re], leak)
    }
}

/// Integrate the three immersion 1-forms along one straight segment with
/// 16-point Gauss-Legendre per subdivision and joint-sign branch
/// continuation seeded from the segment start.
fn segment_forms<S: FieldSampler + ?Sized>(
    sampler: &S,
    from: C,
    to: C,
    subdivisions: usize,
) -> Result<Forms> {
    let dz = to - from;
    let dzb = dz.conj();
    let mut acc = Forms::default();
    let mut reference = sampler.eval(from);
    let dt = 1.0 / subdivisions as f64;
    for s in 0..subdivisions {
        let mid = s as f64 * dt + 0.5 * dt;
        let half = 0.5 * dt;
        for q in 0..16 {
            let (x, w) = if q < 8 {
                (-GL16_X[q], GL16_W[q])
            } else {
                (GL16_X[q - 8], GL16_W[q - 8])
            };
            let t = mid + half * x;
            let z = from + t * dz;
            if sampler.singular_within(z, 0.0) {
                return Err(Error::PathThroughSingularity(z));
            }
            let v = sampler.eval_continued(z, &reference);
            reference = v;
            let wq = w * half;
            let (p1, p2) = (v.psi1, v.psi2);
            let (p1b, p2b) = (p1.conj(), p2.conj());
            let two_i = C::new(0.0, 2.0);
            acc.a += wq * two_i * (p1b * p1b * dz - p2b * p2b * dzb);
            acc.b += wq * two_i * (p2 * p2 * dz - p1 * p1 * dzb);
            acc.x3 += wq * -2.0 * (p1b * p2 * dz + p1 * p2b * dzb);
        }
    }
    Ok(acc)
}

fn polyline_forms<S: FieldSampler + ?Sized>(sampler: &S, path: &PathPolyline) -> Result<Forms> {
    let mut acc = Forms::default();
    for w in path.vertices().windows(2) {
        acc = acc.add(&segment_forms(sampler, w[0], w[1], path.subdivisions())?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy)]
pub struct ImmersionPoint {
    pub x: [f64; 3],
    /// |A - conj(B)| and |Im X₃| consistency of the independently computed
    /// combinations
    pub imag_leakage: f64,
}

/// Immersion of a single point along an explicit path from `base`. The value
/// is normalized so X(base) = (0, 0, 0).
pub fn immerse_point<S: FieldSampler + ?Sized>(
    sampler: &S,
    path: &PathPolyline,
    leak_tolerance: f64,
) -> Result<ImmersionPoint> {
    let forms = polyline_forms(sampler, path)?;
    let (x, leak) = forms.realize();
    if leak > leak_tolerance {
        return Err(Error::LeakageExceeded(leak, leak_tolerance));
    }
    Ok(ImmersionPoint {
        x,
        imag_leakage: leak,
    })
}

/// Immersed patch over a grid: ℝ³ points, metric factor, curvature, and the
/// path-dependence defect.
pub struct SurfacePatch {
    pub grid: DomainGrid,
    pub points: Vec<[f64; 3]>,
    pub p: Vec<f64>,
    pub k: Vec<f64>,
    pub base_point: C,
    /// max over plaquettes of the circulation of the immersion 1-forms,
    /// plus the conjugacy defect of the realized combinations
    pub imag_leakage: f64,
    /// nodes actually reached from the base (unmasked and connected)
    pub computed: Vec<bool>,
}

impl SurfacePatch {
    pub fn node_index(&self, i: usize, j: usize) -> usize {
        j * self.grid.nx + i
    }

    pub fn is_live(&self, i: usize, j: usize) -> bool {
        self.computed[self.node_index(i, j)]
    }

    /// Mean and standard deviation of K over live nodes.
    pub fn k_stats(&self) -> (f64, f64) {
        let vals: Vec<f64> = self
            .computed
            .iter()
            .zip(&self.k)
            .filter_map(|(live, k)| if *live { Some(*k) } else { None })
            .collect();
        let n = vals.len().max(1) as f64;
        let mean = vals.iter().sum::<f64>() / n;
        let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        (mean, var.sqrt())
    }

    pub fn live_points(&self) -> impl Iterator<Item = (usize, usize, &[f64; 3])> {
        (0..self.grid.ny).flat_map(move |j| {
            (0..self.grid.nx).filter_map(move |i| {
                if self.is_live(i, j) {
                    Some((i, j, &self.points[self.node_index(i, j)]))
                } else {
                    None
                }
            })
        })
    }
}

/// Build the immersed patch. Integration reuses partial integrals along a
/// BFS spanning tree of the 4-connected unmasked grid graph rooted at the
/// node nearest `base`; the exact segment base → root seeds the tree so the
/// immersion is normalized to X(base) = 0.
pub fn immerse_patch<S: FieldSampler + ?Sized>(
    sampler: &S,
    base: C,
    grid: &DomainGrid,
    fd_step: f64,
    curvature_step: f64,
) -> Result<SurfacePatch> {
    if sampler.singular_within(base, 10.0 * fd_step) || sampler.cut_crossing(base, fd_step) {
        return Err(Error::PathThroughSingularity(base));
    }
    let mut g = grid.clone();
    g.apply_singularity_mask(sampler, 10.0 * fd_step, fd_step);
    let (nx, ny) = (g.nx, g.ny);
    let n = nx * ny;
    if g.unmasked_count() == 0 {
        return Err(Error::EmptyDomain);
    }

    // root: unmasked node nearest the base point
    let mut root = None;
    let mut best = f64::INFINITY;
    for (i, j, z) in g.iter_unmasked() {
        let d = (z - base).norm();
        if d < best {
            best = d;
            root = Some((i, j));
        }
    }
    let (ri, rj) = root.expect("unmasked node exists");

    let subdiv = 2; // short internode hops need little quadrature
    let mut forms = vec![Forms::default(); n];
    let mut live = vec![false; n];
    let root_z = g.node(ri, rj);
    let root_forms = if root_z == base {
        Forms::default()
    } else {
        segment_forms(sampler, base, root_z, 8)?
    };
    forms[rj * nx + ri] = root_forms;
    live[rj * nx + ri] = true;

    // BFS over 4-neighbors; deterministic row-major queue order
    let mut queue = VecDeque::new();
    queue.push_back((ri, rj));
    while let Some((i, j)) = queue.pop_front() {
        let here = forms[j * nx + i];
        let z_here = g.node(i, j);
        let neighbors = [
            (i.wrapping_sub(1), j),
            (i + 1, j),
            (i, j.wrapping_sub(1)),
            (i, j + 1),
        ];
        for (pi, pj) in neighbors {
            if pi >= nx || pj >= ny || live[pj * nx + pi] || g.is_masked(pi, pj) {
                continue;
            }
            let z_next = g.node(pi, pj);
            match segment_forms(sampler, z_here, z_next, subdiv) {
                Ok(seg) => {
                    forms[pj * nx + pi] = here.add(&seg);
                    live[pj * nx + pi] = true;
                    queue.push_back((pi, pj));
                }
                Err(Error::PathThroughSingularity(_)) => continue,
                Err(e) => return Err(e),
            }
        }
    }

    // plaquette circulation: path-dependence defect of the 1-forms
    let mut defect: f64 = 0.0;
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            if corners.iter().any(|&(a, b)| !live[b * nx + a]) {
                continue;
            }
            let mut circ = Forms::default();
            let mut ok = true;
            for e in 0..4 {
                let (a, b) = (corners[e], corners[(e + 1) % 4]);
                match segment_forms(sampler, g.node(a.0, a.1), g.node(b.0, b.1), subdiv) {
                    Ok(seg) => circ = circ.add(&seg),
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                defect = defect.max(circ.norm());
            }
        }
    }

    // realize coordinates, metric factor, curvature
    let mut points = vec![[0.0; 3]; n];
    let mut pvec = vec![0.0; n];
    let mut kvec = vec![0.0; n];
    let mut leak = defect;
    for j in 0..ny {
        for i in 0..nx {
            let idx = j * nx + i;
            if !live[idx] {
                continue;
            }
            let (x, l) = forms[idx].realize();
            points[idx] = x;
            leak = leak.max(l);
            let z = g.node(i, j);
            let v = sampler.eval(z);
            pvec[idx] = v.p();
            kvec[idx] = gaussian_curvature(sampler, z, curvature_step);
        }
    }

    Ok(SurfacePatch {
        grid: g,
        points,
        p: pvec,
        k: kvec,
        base_point: base,
        imag_leakage: leak,
        computed: live,
    })
}

/// K = -p⁻² ∂∂̄ ln p with ∂∂̄ = ¼(∂ₓₓ + ∂_yy) by the five-point stencil.
pub fn gaussian_curvature<S: FieldSampler + ?Sized>(sampler: &S, z: C, step: f64) -> f64 {
    let lnp = |w: C| sampler.eval(w).p().ln();
    let ih = C::new(0.0, step);
    let lap = (lnp(z + step) + lnp(z - step) + lnp(z + ih) + lnp(z - ih) - 4.0 * lnp(z))
        / (step * step);
    let p = sampler.eval(z).p();
    -0.25 * lap / (p * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_core::staircase;
    use crate::families::{
        ExponentialField, ExponentialParams, OneSolitonField, PhaseInts, PlaneWaveField,
        RationalField, SolitonParams, VacuumParams,
    };
    use approx::assert_abs_diff_eq;

    #[test]
    fn empty_path_immersion_is_origin() {
        let f = RationalField::new(1, PhaseInts::default()).unwrap();
        // a degenerate out-and-back path: net zero
        let path = PathPolyline::new(
            vec![C::new(1.0, 0.0), C::new(1.5, 0.0), C::new(1.0, 0.0)],
            8,
        )
        .unwrap();
        let pt = immerse_point(&f, &path, 1e-8).unwrap();
        for c in pt.x {
            assert_abs_diff_eq!(c, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn soliton_path_independence() {
        let f = OneSolitonField::new(SolitonParams::new(1.0, -1.0).unwrap(), PhaseInts::default());
        let from = C::new(0.5, 0.0);
        let to = C::new(1.0, 1.0);
        let p1 = immerse_point(&f, &staircase(from, to, true).unwrap(), 1e-6).unwrap();
        let p2 = immerse_point(&f, &staircase(from, to, false).unwrap(), 1e-6).unwrap();
        for (a, b) in p1.x.iter().zip(&p2.x) {
            assert!((a - b).abs() < 1e-8, "path dependence: {a} vs {b}");
        }
    }

    #[test]
    fn rational_m1_immersion_matches_closed_antiderivative() {
        // For the gate-passing m = 1 field the three integrals have closed
        // antiderivatives A = -2iz̄/(1+|z|²) + C, X₃ = 2/(1+|z|²) + C₃.
        let f = RationalField::new(1, PhaseInts::default()).unwrap();
        let base = C::new(1.0, 0.0);
        let anti_a = |z: C| -2.0 * C::i() * z.conj() / (1.0 + z.norm_sqr());
        let anti_x3 = |z: C| 2.0 / (1.0 + z.norm_sqr());
        for &to in &[C::new(2.0, 0.5), C::new(0.3, -0.8), C::new(-1.1, 1.4)] {
            let pt = immerse_point(&f, &staircase(base, to, true).unwrap(), 1e-8).unwrap();
            let expect_a = anti_a(to) - anti_a(base);
            let expect_x3 = anti_x3(to) - anti_x3(base);
            let got_a = C::new(pt.x[0], pt.x[1]);
            assert!((got_a - expect_a).norm() < 1e-10, "A at {to}");
            assert!((pt.x[2] - expect_x3).abs() < 1e-10, "X3 at {to}");
        }
    }

    #[test]
    fn vacuum_patch_has_flat_curvature_and_tiny_leakage() {
        let f = PlaneWaveField::new(VacuumParams::feasible());
        let grid = DomainGrid::new(-1.0, 1.0, -1.0, 1.0, 15, 15).unwrap();
        let patch = immerse_patch(&f, C::new(0.0, 0.0), &grid, 1e-5, CURVATURE_FD_STEP).unwrap();
        let (k_mean, k_std) = patch.k_stats();
        assert_abs_diff_eq!(k_mean, 0.0, epsilon = 1e-6);
        assert!(k_std < 1e-6);
        assert!(patch.imag_leakage < 1e-10, "leak {}", patch.imag_leakage);
    }

    #[test]
    fn soliton_patch_curvature_matches_inverse_square_separation() {
        let f = OneSolitonField::new(SolitonParams::new(1.0, -1.0).unwrap(), PhaseInts::default());
        let grid = DomainGrid::new(-3.0, 3.0, -3.0, 3.0, 25, 25).unwrap();
        let patch = immerse_patch(&f, C::new(0.0, 0.0), &grid, 1e-5, CURVATURE_FD_STEP).unwrap();
        let (k_mean, k_std) = patch.k_stats();
        assert_abs_diff_eq!(k_mean, 0.25, epsilon = 1e-4);
        assert!(k_std < 1e-4, "K std {k_std}");
    }

    #[test]
    fn exponential_field_leaks_path_dependence() {
        // the catalogued exponential form violates the conservation law, so
        // plaquette circulation is the signal
        let f = ExponentialField::new(ExponentialParams::new(0.5, C::new(1.0, 0.0)).unwrap());
        let grid = DomainGrid::new(-1.0, 1.0, -1.0, 1.0, 9, 9).unwrap();
        let patch = immerse_patch(&f, C::new(0.0, 0.0), &grid, 1e-5, CURVATURE_FD_STEP).unwrap();
        assert!(
            patch.imag_leakage > 1e-4,
            "expected visible path dependence, got {}",
            patch.imag_leakage
        );
    }

    #[test]
    fn sphere_shape_of_soliton_patch() {
        // catalogued one-soliton immersion is the sphere
        // X₁² + (X₂-Δ)² + X₃² = Δ² after centering
        let f = OneSolitonField::new(SolitonParams::new(1.0, -1.0).unwrap(), PhaseInts::default());
        let grid = DomainGrid::new(-2.0, 2.0, -2.0, 2.0, 15, 15).unwrap();
        let base = C::new(0.0, 0.0);
        let patch = immerse_patch(&f, base, &grid, 1e-5, CURVATURE_FD_STEP).unwrap();
        // closed form at the base fixes the translation:
        // X(z) - X(base) with X = (-2Δ²y/Q, Δ³/Q, Δ²(2x)/Q), Δ = 2
        let delta = 2.0;
        let closed = |z: C| {
            let q = (z - 1.0).norm_sqr() + (z + 1.0).norm_sqr();
            [
                -2.0 * delta * delta * z.im / q,
                delta * delta * delta / q,
                delta * delta * 2.0 * z.re / q,
            ]
        };
        let x0 = closed(base);
        for (i, j, pt) in patch.live_points() {
            let z = patch.grid.node(i, j);
            let expect = closed(z);
            for c in 0..3 {
                assert!(
                    (pt[c] - (expect[c] - x0[c])).abs() < 1e-8,
                    "component {c} at {z}: {} vs {}",
                    pt[c],
                    expect[c] - x0[c]
                );
            }
        }
    }
}
