//! Mesh and table export for immersed patches: Wavefront OBJ, CSV, and a
//! JSON run summary. Output is deterministic: fixed field order, no
//! timestamps, 17-significant-digit decimals in the CSV.

use super::immersion::SurfacePatch;
use serde::Serialize;
use std::fmt::Write as _;

/// OBJ with one `v` line per live node and two CCW triangles per fully live
/// quad. Vertex indices are 1-based over the emitted vertices.
pub fn patch_obj(patch: &SurfacePatch) -> String {
    let (nx, ny) = (patch.grid.nx, patch.grid.ny);
    let mut vertex_id = vec![0usize; nx * ny];
    let mut out = String::new();
    let mut next = 1usize;
    for j in 0..ny {
        for i in 0..nx {
            if patch.is_live(i, j) {
                let p = &patch.points[patch.node_index(i, j)];
                writeln!(out, "v {} {} {}", p[0], p[1], p[2]).unwrap();
                vertex_id[j * nx + i] = next;
                next += 1;
            }
        }
    }
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let q = [
                vertex_id[j * nx + i],
                vertex_id[j * nx + i + 1],
                vertex_id[(j + 1) * nx + i + 1],
                vertex_id[(j + 1) * nx + i],
            ];
            if q.iter().any(|&v| v == 0) {
                continue; // quad touches a masked or unreached corner
            }
            writeln!(out, "f {} {} {}", q[0], q[1], q[2]).unwrap();
            writeln!(out, "f {} {} {}", q[0], q[2], q[3]).unwrap();
        }
    }
    out
}

/// CSV with header `x,y,X1,X2,X3,p,K,masked`, one row per node.
pub fn patch_csv(patch: &SurfacePatch) -> String {
    let mut out = String::from("x,y,X1,X2,X3,p,K,masked\n");
    for j in 0..patch.grid.ny {
        for i in 0..patch.grid.nx {
            let z = patch.grid.node(i, j);
            let idx = patch.node_index(i, j);
            let masked = !patch.is_live(i, j);
            let p = &patch.points[idx];
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}",
                z.re, z.im, p[0], p[1], p[2], patch.p[idx], patch.k[idx], masked as u8
            )
            .unwrap();
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct PatchSummary {
    pub family: String,
    pub params: String,
    pub base: [f64; 2],
    pub k_mean: f64,
    pub k_std: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub charge: Option<f64>,
    pub leakage: f64,
}

pub fn patch_summary_json(
    patch: &SurfacePatch,
    family: &str,
    params: &str,
    charge: Option<f64>,
) -> String {
    let (k_mean, k_std) = patch.k_stats();
    let summary = PatchSummary {
        family: family.to_string(),
        params: params.to_string(),
        base: [patch.base_point.re, patch.base_point.im],
        k_mean,
        k_std,
        charge,
        leakage: patch.imag_leakage,
    };
    serde_json::to_string_pretty(&summary).expect("summary serializes")
}
