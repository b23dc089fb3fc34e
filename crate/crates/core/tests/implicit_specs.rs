//! Implicit-surface calibration across the named specs: positive fits where
//! the attached relation actually holds, measured reports where it does not,
//! and negative controls.

use enneper::complex_core::{DomainGrid, C};
use enneper::families::{make_family, BumpField, BumpParams};
use enneper::geometry::{
    calibrate_translation, immerse_patch, implicit_residual, ImplicitSurfaceSpec,
    CURVATURE_FD_STEP,
};
use enneper::params::Params;

fn rational_patch() -> enneper::geometry::SurfacePatch {
    let f = make_family("rational", &Params::parse("m=1").unwrap())
        .unwrap()
        .sampler;
    let grid = DomainGrid::annulus(0.4, 2.5, 25, 25).unwrap();
    immerse_patch(&f, C::new(1.0, 0.0), &grid, 1e-5, CURVATURE_FD_STEP).unwrap()
}

#[test]
fn revolution_curve_readings_both_produce_verdicts() {
    // The catalogued revolution curve is dimensionally suspect; both the
    // literal and the X₃/4-normalized readings are measured and reported,
    // neither asserted. The true surface is the unit sphere, so both stay
    // far from zero; this test pins that both verdicts exist and are finite.
    let patch = rational_patch();
    for spec in [
        ImplicitSurfaceSpec::RevolutionCurve { normalized: false },
        ImplicitSurfaceSpec::RevolutionCurve { normalized: true },
    ] {
        let cal = calibrate_translation(&patch, &spec).unwrap();
        let res = implicit_residual(&patch, &spec, &cal.offset).unwrap();
        assert!(res.max_abs.is_finite() && res.l2.is_finite());
        assert!(res.node_count > 100);
        eprintln!(
            "revolution-curve normalized={:?}: held-out residual {:.3e} (fit {:.3e})",
            matches!(spec, ImplicitSurfaceSpec::RevolutionCurve { normalized: true }),
            res.max_abs,
            cal.fit_residual
        );
    }
}

#[test]
fn sphere_patch_is_a_negative_control_for_the_catenoid_quadric() {
    let patch = rational_patch();
    let spec = ImplicitSurfaceSpec::CatenoidQuadric { a_r: 0.5 };
    let cal = calibrate_translation(&patch, &spec).unwrap();
    let res = implicit_residual(&patch, &spec, &cal.offset).unwrap();
    assert!(
        res.max_abs > 1e-2,
        "sphere patch should not satisfy the quadric: {:.3e}",
        res.max_abs
    );
}

#[test]
fn bump_catenoid_relation_is_reported_not_asserted() {
    // the bump family fails the residual gate as catalogued, so its surface
    // relation is measured and reported only; the immersion itself is well
    // defined (the conservation law holds), which the leakage confirms
    let params = BumpParams::new(1.0, 1.0, 1.0).unwrap();
    let f = BumpField::new(params);
    let grid = DomainGrid::new(-1.5, 1.5, -1.5, 1.5, 17, 17).unwrap();
    let patch = immerse_patch(&f, C::new(0.0, 0.0), &grid, 1e-5, CURVATURE_FD_STEP).unwrap();
    assert!(
        patch.imag_leakage < 1e-9,
        "bump immersion should be path independent, leak {:.3e}",
        patch.imag_leakage
    );
    let spec = ImplicitSurfaceSpec::BumpCatenoid {
        c: 1.0,
        lambda: 1.0,
        a_const: 1.0,
    };
    let cal = calibrate_translation(&patch, &spec).unwrap();
    let res = implicit_residual(&patch, &spec, &cal.offset).unwrap();
    assert!(res.max_abs.is_finite());
    eprintln!(
        "bump catenoid relation: held-out residual {:.3e} (gate fails, value reported only)",
        res.max_abs
    );
}
