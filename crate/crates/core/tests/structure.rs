mod support;

use std::f64::consts::FRAC_PI_3;
use std::io::Write;

use proptest::prelude::*;
use reuleaux::formulas::MAX_ANGLE;
use reuleaux::geom::{Point3, Tolerances};
use reuleaux::mesh::spindle_point;
use reuleaux::polyhedron::{check_extremal, VertexKind};
use reuleaux::{Error, PointConfig, ReuleauxStructure};
use support::{apply, rotation, structure, SpecialPair};

const CONFIGS: [&str; 2] = ["tetra", "pentad"];

#[test]
fn shipped_configs_have_expected_counts() {
    for name in CONFIGS {
        let s = structure(name);
        let n = s.config.len();
        assert_eq!(s.extremality.diametric_pair_count, 2 * n - 2, "{name}");
        assert_eq!(s.pairs.len(), n - 1, "{name}");
        assert_eq!(s.report.euler_characteristic, 2, "{name}");
        assert_eq!(s.edges.len(), 2 * (n - 1), "{name}");
    }
}

#[test]
fn dual_pair_angle_identities() {
    for name in CONFIGS {
        for p in &structure(name).pairs {
            let (t, tp, phi, phip) = (p.theta, p.theta_prime, p.phi, p.phi_prime);
            assert!(t > 0.0 && t <= MAX_ANGLE && tp > 0.0 && tp <= MAX_ANGLE);
            assert!(((0.5 * phi).sin() * (0.5 * t).cos() - (0.5 * tp).sin()).abs() < 1e-9);
            assert!(((0.5 * phip).sin() * (0.5 * tp).cos() - (0.5 * t).sin()).abs() < 1e-9);
            let lhs = (0.5 * t).cos() * (0.5 * phi).cos();
            let rhs = (0.5 * tp).cos() * (0.5 * phip).cos();
            assert!((lhs - rhs).abs() < 1e-9);
        }
    }
}

#[test]
fn midpoint_distance_equals_cos_product() {
    for name in CONFIGS {
        let s = structure(name);
        let pts = s.config.points();
        for p in &s.pairs {
            let m = pts[p.b].midpoint(pts[p.c]);
            let mp = pts[p.b_prime].midpoint(pts[p.c_prime]);
            let expected = (0.5 * p.theta).cos() * (0.5 * p.phi).cos();
            assert!((m.dist(mp) - expected).abs() < 1e-9);
        }
    }
}

#[test]
fn edge_points_stay_in_every_ball() {
    for name in CONFIGS {
        let s = structure(name);
        for e in &s.edges {
            for k in 0..16 {
                let q = e.arc.point_at(k as f64 / 15.0);
                for x in s.config.points() {
                    assert!(q.dist(*x) <= 1.0 + 1e-9);
                }
            }
        }
    }
}

#[test]
fn tetra_pairs_are_regular() {
    let s = structure("tetra");
    for p in &s.pairs {
        assert!((p.theta - FRAC_PI_3).abs() < 1e-12);
        assert!((p.theta_prime - FRAC_PI_3).abs() < 1e-12);
    }
    assert_eq!(s.report.dangling().count(), 0);
}

#[test]
fn pentad_has_one_dangling_vertex_on_the_axis_faces() {
    let s = structure("pentad");
    assert!(s.extremality.is_extremal);
    assert_eq!(s.extremality.diametric_pair_count, 8);
    let dangling: Vec<_> = s.report.dangling().collect();
    assert_eq!(dangling.len(), 1);
    assert_eq!(dangling[0].label, "p2");
    assert_eq!(dangling[0].faces, vec![0, 1]);
    assert!(s
        .report
        .vertices
        .iter()
        .filter(|v| v.index != dangling[0].index)
        .all(|v| v.kind == VertexKind::Principal));
}

#[test]
fn spindle_samples_lie_on_the_spindle_surface() {
    for name in CONFIGS {
        let s = structure(name);
        let pts = s.config.points();
        for p in &s.pairs {
            let (b, c, bp, cp) = (pts[p.b], pts[p.c], pts[p.b_prime], pts[p.c_prime]);
            let oracle = SpecialPair::from_points(b, c, bp, cp);
            let m = bp.midpoint(cp);
            let v = (bp - cp).normalized();
            let half = 0.5 * bp.dist(cp);
            for i in 0..=6 {
                for j in 0..=6 {
                    let (ss, tt) = (p.phi_prime * i as f64 / 6.0, p.theta_prime * j as f64 / 6.0);
                    let x = spindle_point(p, &s.config, ss, tt).unwrap();
                    let (ox, xs, xt) = oracle.spindle(ss, tt);
                    assert!(x.dist(ox) < 1e-12);
                    // |x⊥| + √(1 − |b′ − c′|²/4) = √(1 − (x∥)²)
                    let d = x - m;
                    let along = d.dot(v);
                    let perp = (d - v * along).norm();
                    let residual = perp + (1.0 - half * half).sqrt() - (1.0 - along * along).sqrt();
                    assert!(residual.abs() < 1e-9, "{name}: residual {residual}");
                    assert!(xs.dot(xt).abs() < 1e-9);
                    let element = (tt - 0.5 * p.theta_prime).cos() - (0.5 * p.theta_prime).cos();
                    assert!((xs.cross(xt).norm() - element).abs() < 1e-9);
                }
            }
            assert!(spindle_point(p, &s.config, p.phi_prime + 1e-6, 0.0).is_err());
        }
    }
}

#[test]
fn json_files_load_and_reject_cleanly() {
    let tetra = PointConfig::generator("tetra", Tolerances::default()).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(tetra.to_json().as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let loaded = PointConfig::load(path, Tolerances::default()).unwrap();
    assert_eq!(loaded.points(), tetra.points());

    assert!(matches!(
        PointConfig::load("/definitely/not/here.json", Tolerances::default()),
        Err(Error::Io(_))
    ));
    assert!(PointConfig::from_json("{\"points\": [[0, 0]]}", Tolerances::default()).is_err());
    assert!(PointConfig::from_json("not json", Tolerances::default()).is_err());
}

#[test]
fn non_extremal_sets_are_reported_and_refused() {
    let pts = vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(1.0, 0.0, 0.0),
        Point3::new(0.0, 1.0, 0.0),
        Point3::new(0.0, 0.0, 1.0),
    ];
    let cfg = PointConfig::new(pts, None, Tolerances::default()).unwrap();
    let report = check_extremal(&cfg).unwrap();
    assert!(!report.is_extremal);
    assert_eq!(report.diametric_pair_count, 3);
    assert!(matches!(ReuleauxStructure::build(cfg), Err(Error::Validation(_))));
}

fn sorted_angles(s: &ReuleauxStructure) -> Vec<(f64, f64)> {
    let mut v: Vec<(f64, f64)> = s.pairs.iter().map(|p| (p.theta, p.theta_prime)).collect();
    // Keys rounded so that angles tied up to rounding sort the same way.
    let key = |x: f64| (x * 1e6).round() as i64;
    v.sort_by_key(|&(t, tp)| (key(t), key(tp)));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rigid_motions_preserve_structure(
        name in prop::sample::select(CONFIGS.to_vec()),
        u in [0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0],
        shift in [-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0],
    ) {
        let base = structure(name);
        let r = rotation(u[0], u[1], u[2]);
        let shift = Point3::new(shift[0], shift[1], shift[2]);
        let moved_cfg = base.config.map_points(|p| apply(&r, shift, p)).unwrap();
        let moved = ReuleauxStructure::build(moved_cfg).unwrap();
        prop_assert_eq!(moved.extremality.diametric_pair_count, base.extremality.diametric_pair_count);
        prop_assert_eq!(moved.pairs.len(), base.pairs.len());
        prop_assert_eq!(moved.report.euler_characteristic, 2);
        for (a, b) in sorted_angles(&moved).iter().zip(sorted_angles(&base)) {
            prop_assert!((a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9);
        }
    }
}
