//! Rectangular sample grids with per-node singularity masks, and 2D
//! composite Simpson quadrature over the unmasked region.

use super::field::{FieldSampler, C};
use crate::error::Error;
use crate::Result;

/// Node-centered rectangular grid. `mask[j*nx + i] == true` means the node
/// is excluded (too close to a singularity) and takes no part in statistics
/// or quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainGrid {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
    mask: Vec<bool>,
}

impl DomainGrid {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(xmin.is_finite() && xmax.is_finite() && ymin.is_finite() && ymax.is_finite()) {
            return Err(Error::BadParams("non-finite grid bounds".into()));
        }
        if xmax <= xmin || ymax <= ymin {
            return Err(Error::BadParams("empty grid extent".into()));
        }
        if nx < 2 || ny < 2 {
            return Err(Error::BadParams("grid needs nx, ny >= 2".into()));
        }
        Ok(Self {
            xmin,
            xmax,
            ymin,
            ymax,
            nx,
            ny,
            mask: vec![false; nx * ny],
        })
    }

    /// Square grid on [-r, r]² masked down to the annulus rmin <= |z| <= rmax.
    pub fn annulus(rmin: f64, rmax: f64, nx: usize, ny: usize) -> Result<Self> {
        if !(rmin >= 0.0 && rmax > rmin) {
            return Err(Error::BadParams("annulus needs 0 <= rmin < rmax".into()));
        }
        let mut g = Self::new(-rmax, rmax, -rmax, rmax, nx, ny)?;
        for j in 0..ny {
            for i in 0..nx {
                let r = g.node(i, j).norm();
                if r < rmin || r > rmax {
                    g.mask[j * nx + i] = true;
                }
            }
        }
        Ok(g)
    }

    pub fn dx(&self) -> f64 {
        (self.xmax - self.xmin) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.ymax - self.ymin) / (self.ny - 1) as f64
    }

    pub fn node(&self, i: usize, j: usize) -> C {
        C::new(
            self.xmin + i as f64 * self.dx(),
            self.ymin + j as f64 * self.dy(),
        )
    }

    pub fn is_masked(&self, i: usize, j: usize) -> bool {
        self.mask[j * self.nx + i]
    }

    pub fn set_masked(&mut self, i: usize, j: usize, masked: bool) {
        self.mask[j * self.nx + i] = masked;
    }

    /// Mask every node within `clearance` of the sampler's singular set, and
    /// every node whose FD stencil of step `probe` straddles a branch cut.
    /// A nonpositive `probe` skips the cut check: quantities built from
    /// moduli or branch-continued stencils are cut-insensitive.
    pub fn apply_singularity_mask<S: FieldSampler + ?Sized>(
        &mut self,
        sampler: &S,
        clearance: f64,
        probe: f64,
    ) {
        for j in 0..self.ny {
            for i in 0..self.nx {
                let z = self.node(i, j);
                if sampler.singular_within(z, clearance)
                    || (probe > 0.0 && sampler.cut_crossing(z, probe))
                {
                    self.mask[j * self.nx + i] = true;
                }
            }
        }
    }

    pub fn unmasked_count(&self) -> usize {
        self.mask.iter().filter(|m| !**m).count()
    }

    /// Row-major iterator over unmasked nodes.
    pub fn iter_unmasked(&self) -> impl Iterator<Item = (usize, usize, C)> + '_ {
        (0..self.ny).flat_map(move |j| {
            (0..self.nx).filter_map(move |i| {
                if self.is_masked(i, j) {
                    None
                } else {
                    Some((i, j, self.node(i, j)))
                }
            })
        })
    }

    /// Nodes of the outermost unmasked ring (grid boundary), used for
    /// integrand tail estimates.
    pub fn boundary_nodes(&self) -> impl Iterator<Item = C> + '_ {
        (0..self.ny).flat_map(move |j| {
            (0..self.nx).filter_map(move |i| {
                let on_edge = i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1;
                if on_edge && !self.is_masked(i, j) {
                    Some(self.node(i, j))
                } else {
                    None
                }
            })
        })
    }
}

/// ∫∫ f dx dy over the unmasked region by composite 2D Simpson panels.
/// A panel spans 2×2 grid cells (3×3 nodes); panels touching any masked
/// node are skipped. Both nx and ny must be odd so the grid tiles exactly.
pub fn area_integral<F: Fn(C) -> C>(f: F, grid: &DomainGrid) -> Result<C> {
    if grid.nx < 3 || grid.ny < 3 || grid.nx % 2 == 0 || grid.ny % 2 == 0 {
        return Err(Error::BadParams(
            "area_integral needs odd nx, ny >= 3 for Simpson panels".into(),
        ));
    }
    const W: [f64; 3] = [1.0, 4.0, 1.0];
    let scale = grid.dx() * grid.dy() / 9.0;
    let mut acc = C::new(0.0, 0.0);
    let mut panels = 0usize;
    for pj in 0..(grid.ny - 1) / 2 {
        for pi in 0..(grid.nx - 1) / 2 {
            let (i0, j0) = (2 * pi, 2 * pj);
            let mut clear = true;
            'scan: for dj in 0..3 {
                for di in 0..3 {
                    if grid.is_masked(i0 + di, j0 + dj) {
                        clear = false;
                        break 'scan;
                    }
                }
            }
            if !clear {
                continue;
            }
            panels += 1;
            for dj in 0..3 {
                for di in 0..3 {
                    acc += W[di] * W[dj] * f(grid.node(i0 + di, j0 + dj));
                }
            }
        }
    }
    if panels == 0 {
        return Err(Error::EmptyDomain);
    }
    Ok(acc * scale)
}
