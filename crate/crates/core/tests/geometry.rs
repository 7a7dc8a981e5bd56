use supint::audit::{run_audit, AuditSettings};
use supint::geometry::{curvature_cartesian, curvature_spherical};
use supint::{ConformalProfile, Sign, SpaceSpec};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn cartesian_grid() -> Vec<[f64; 3]> {
    (0..50)
        .map(|i| {
            let t = i as f64 / 49.0;
            [0.1 + 0.8 * t, -0.6 + 0.9 * (3.0 * t).sin(), 0.2 + 0.5 * (5.0 * t).cos()]
        })
        .collect()
}

fn spherical_grid(edge: f64) -> Vec<(f64, f64)> {
    (0..50).map(|i| (edge * (0.05 + 0.9 * i as f64 / 49.0), 0.2 + 1.1 * ((i * 7) % 50) as f64 / 49.0)).collect()
}

#[test]
fn cartesian_closed_forms() {
    for &z in &[0.8, -0.5] {
        let flat_f = SpaceSpec::free(z, ConformalProfile::Identity).unwrap();
        let exp = SpaceSpec::free(z, ConformalProfile::Exponential(Sign::Plus)).unwrap();
        for q in cartesian_grid() {
            let q2: f64 = q.iter().map(|v| v * v).sum();
            let k = curvature_cartesian(&q, &flat_f).unwrap();
            assert!(rel(k.scalar, -5.0 * z * (z * q2).sinh()) < 1e-8);
            assert!(k.identity_residual().abs() <= 1e-8 * k.scalar.abs());
            let c = curvature_cartesian(&q, &exp).unwrap();
            for s in c.sectional {
                assert!(rel(s, z) < 1e-8);
            }
            assert!(rel(c.scalar, 6.0 * z) < 1e-8);
            assert!(c.identity_residual().abs() <= 1e-8 * c.scalar.abs());
        }
    }
}

#[test]
fn spherical_closed_forms() {
    for &z in &[1.0, 0.45] {
        let l = f64::sqrt(z);
        let edge = std::f64::consts::FRAC_PI_2 / l;
        for (r, th) in spherical_grid(edge) {
            let x = l * r;
            let cc = curvature_spherical(r, th, &SpaceSpec::free(z, ConformalProfile::constant_curvature()).unwrap())
                .unwrap();
            assert!(rel(cc.scalar, 6.0 * z) < 1e-8);
            let id = curvature_spherical(r, th, &SpaceSpec::free(z, ConformalProfile::Identity).unwrap()).unwrap();
            assert!(rel(id.scalar, -2.5 * z * x.sin() * x.tan()) < 1e-8);
            let c3 = curvature_spherical(r, th, &SpaceSpec::free(z, ConformalProfile::CosCubed).unwrap()).unwrap();
            assert!(rel(c3.scalar, -z * x.cos().powi(2) * (17.0 + (2.0 * x).cos())) < 1e-8);
            for rep in [&cc, &id, &c3] {
                assert!(rep.identity_residual().abs() <= 1e-8 * rep.scalar.abs().max(1e-12));
            }
        }
    }
}

#[test]
fn closed_forms_agree_with_the_metric_oracle() {
    let profiles = [
        ConformalProfile::Identity,
        ConformalProfile::Exponential(Sign::Plus),
        ConformalProfile::PowerCosine { k: 0.7 },
        ConformalProfile::CosCubed,
    ];
    for profile in profiles {
        for &(z, k2) in &[(0.7, 1.0), (-0.6, 1.5), (0.4, -1.0)] {
            let space = SpaceSpec::new(z, k2, profile.clone(), [0.0; 3]).unwrap();
            let settings = AuditSettings {
                bracket_samples: 0,
                involution_samples: 0,
                rank_samples: 0,
                chart_samples: 0,
                potentials: vec![],
                seed: 31,
                ..AuditSettings::default()
            };
            let report = run_audit(&space, &settings);
            for name in ["oracle-equivalence/cartesian", "oracle-equivalence/spherical", "scalar-sectional-identity"] {
                let p = report.get(name).unwrap();
                assert!(
                    p.passed && p.evaluated == if name.starts_with("scalar") { 200 } else { 100 },
                    "{} z={z}: {p:?}",
                    profile.label()
                );
            }
        }
    }
}
