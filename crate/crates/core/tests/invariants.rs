//! Cross-module invariants: the construction against the analytic oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use torus_shade::construction::{
    run_construction, trace_shade_path, validate_trace, InterpretationVariant, TorusElevationSpec,
};
use torus_shade::oracle::{project_elevation, terminator_v, Torus3};
use torus_shade::planar::Point2;

/// The 54 integer configs: widths 12..=20, heights 1..=6 (all satisfy the
/// ring/horn constraint).
fn paper_matrix() -> Vec<TorusElevationSpec> {
    let mut out = Vec::new();
    for width in (12..=20).rev() {
        for height in (1..=6).rev() {
            out.push(TorusElevationSpec::new(width as f64, height as f64).unwrap());
        }
    }
    assert_eq!(out.len(), 54);
    out
}

#[test]
fn all_54_configs_validate_cleanly() {
    for spec in paper_matrix() {
        let trace = run_construction(spec, InterpretationVariant::canonical()).unwrap();
        for assertion in validate_trace(&trace) {
            assert!(
                assertion.residual < 1e-9 * spec.width,
                "{} on {}: residual {}",
                assertion.id,
                spec.config_id(),
                assertion.residual
            );
        }
    }
}

#[test]
fn d_and_e_lie_on_the_terminator_projection() {
    for spec in paper_matrix() {
        let trace = run_construction(spec, InterpretationVariant::canonical()).unwrap();
        let torus = Torus3::new(spec.major_radius, spec.minor_radius);
        // u = 180 deg gives v = -45 deg, the lowest left meridian trace
        let (v_outer, _) = terminator_v(std::f64::consts::PI);
        assert!((v_outer + std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        let d_oracle = project_elevation(std::f64::consts::PI, v_outer, &torus);
        let (v0, _) = terminator_v(0.0);
        let e_oracle = project_elevation(0.0, v0, &torus);
        assert!(
            trace.d.distance(d_oracle) < 1e-12 * spec.width,
            "D off terminator for {}",
            spec.config_id()
        );
        assert!(
            trace.e.distance(e_oracle) < 1e-12 * spec.width,
            "E off terminator for {}",
            spec.config_id()
        );
    }
}

#[test]
fn ring_membership_of_mirrored_hits() {
    for spec in paper_matrix() {
        let trace = run_construction(spec, InterpretationVariant::canonical()).unwrap();
        let r = spec.minor_radius;
        assert!((trace.n_dprime.distance(trace.p) - r).abs() < 1e-12 * r);
        assert!((trace.o_dprime.distance(trace.q) - r).abs() < 1e-12 * r);
    }
}

#[test]
fn construction_is_scale_equivariant_on_random_configs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    for _ in 0..20 {
        let height = rng.gen_range(0.5..8.0);
        let width = rng.gen_range(2.0 * height..6.0 * height);
        let spec = TorusElevationSpec::new(width, height).unwrap();
        let doubled = TorusElevationSpec::new(2.0 * width, 2.0 * height).unwrap();
        let a = run_construction(spec, InterpretationVariant::canonical()).unwrap();
        let b = run_construction(doubled, InterpretationVariant::canonical()).unwrap();
        for ((_, p), (_, p2)) in a.labeled_points().iter().zip(b.labeled_points()) {
            let want = Point2::new(2.0 * p.x, 2.0 * p.z);
            assert!(
                p2.distance(want) < 1e-9 * width,
                "{} vs 2*{:?}",
                spec.config_id(),
                p
            );
        }
        let pa = trace_shade_path(&a, 512);
        let pb = trace_shade_path(&b, 512);
        for (va, vb) in pa.vertices.iter().zip(pb.vertices.iter()) {
            assert!(vb.distance(Point2::new(2.0 * va.x, 2.0 * va.z)) < 1e-9 * width);
        }
    }
}

#[test]
fn symmetry_pairs_hold_for_every_variant_on_the_matrix() {
    for spec in paper_matrix().into_iter().step_by(7) {
        for variant in InterpretationVariant::all() {
            let trace = run_construction(spec, variant).unwrap();
            for (id, first, second) in trace.symmetric_pairs() {
                let residual = (second - -first).norm();
                assert!(
                    residual < 1e-12 * spec.width,
                    "{id} broken for {} {}: {residual}",
                    spec.config_id(),
                    variant.id()
                );
            }
        }
    }
}
