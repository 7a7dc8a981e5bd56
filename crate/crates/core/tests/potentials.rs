use supint::potentials::{green_closed_form, green_quadrature, intrinsic_potential, GreenFunction, RadialPotential};
use supint::{ConformalProfile, Error, GreenCase, Sign, SpaceSpec};

fn grid(z: f64) -> Vec<f64> {
    let top = if z > 0.0 { 0.95 * std::f64::consts::FRAC_PI_2 / z.sqrt() } else { 3.0 };
    (0..50).map(|i| 0.02 + (top - 0.02) * i as f64 / 49.0).collect()
}

fn profiles() -> [ConformalProfile; 5] {
    [
        ConformalProfile::Identity,
        ConformalProfile::Exponential(Sign::Plus),
        ConformalProfile::PowerCosine { k: 0.7 },
        ConformalProfile::PowerCosine { k: -0.4 },
        ConformalProfile::CosCubed,
    ]
}

#[test]
fn quadrature_matches_closed_forms() {
    for profile in profiles() {
        let case = profile.green_case().unwrap();
        for &z in &[1.0, 0.3, -0.4, -1.0] {
            for r in grid(z) {
                let q = green_quadrature(r, &profile, z).unwrap();
                let c = green_closed_form(r, case, z).unwrap();
                assert!((q - c).abs() <= 1e-8 * c.abs().max(1.0), "{} z={z} r={r}: {q} vs {c}", profile.label());
            }
        }
    }
}

#[test]
fn closed_forms_solve_the_radial_laplace_equation() {
    for profile in profiles() {
        for &z in &[0.8, -0.6] {
            let g = GreenFunction::new(profile.clone(), z);
            for r in grid(z).into_iter().skip(2) {
                let flux = g.flux(r).unwrap();
                assert!((flux - 1.0).abs() <= 1e-6, "{} z={z} r={r}: {flux}", profile.label());
            }
        }
    }
}

#[test]
fn flat_limit_is_the_newtonian_potential() {
    for case in [GreenCase::Identity, GreenCase::ConstantCurvature, GreenCase::PowerCosine(0.7), GreenCase::CosCubed] {
        for &r in &[0.1, 0.5, 1.0, 3.0] {
            let u = green_closed_form(r, case, 1e-10).unwrap();
            assert!((u + 1.0 / r).abs() <= 1e-6 * (1.0 / r), "{case:?} r={r}: {u}");
        }
    }
}

#[test]
fn explicit_constant_curvature_potentials() {
    let z = 1.0;
    let spec = SpaceSpec::free(z, ConformalProfile::constant_curvature()).unwrap();
    for r in grid(z) {
        let kc = intrinsic_potential(r, RadialPotential::KeplerCoulomb { alpha: 1.0 }, &spec).unwrap();
        assert!((kc + 1.0 / r.tan()).abs() < 1e-12 * kc.abs().max(1.0));
        let osc = intrinsic_potential(r, RadialPotential::Oscillator { beta: 1.0 }, &spec).unwrap();
        assert!((osc - r.tan().powi(2)).abs() < 1e-12 * osc.max(1.0));
    }
}

#[test]
fn oscillator_is_singular_at_a_zero_of_the_green_function() {
    let spec = SpaceSpec::free(-1.0, ConformalProfile::CosCubed).unwrap();
    let u = |r: f64| green_closed_form(r, GreenCase::CosCubed, -1.0).unwrap();
    let (mut a, mut b) = (1.0, 1.5);
    assert!(u(a) < 0.0 && u(b) > 0.0);
    while b - a > 1e-15 {
        let m = 0.5 * (a + b);
        if u(m) < 0.0 {
            a = m
        } else {
            b = m
        }
    }
    // r·tanh(r) = 1 at the zero of u = r − coth r.
    assert!((a * a.tanh() - 1.0).abs() < 1e-12);
    let osc = RadialPotential::Oscillator { beta: 1.0 };
    assert!(matches!(intrinsic_potential(a, osc, &spec), Err(Error::Domain(_))));
    assert!(intrinsic_potential(a - 0.05, osc, &spec).unwrap().is_finite());
    assert!(intrinsic_potential(a + 0.05, osc, &spec).unwrap().is_finite());
}

#[test]
fn outside_the_patch_is_a_domain_error() {
    let z: f64 = 1.0;
    let edge = std::f64::consts::FRAC_PI_2 / z.sqrt();
    assert!(matches!(green_closed_form(edge + 0.01, GreenCase::CosCubed, z), Err(Error::Domain(_))));
    assert!(matches!(green_quadrature(-0.1, &ConformalProfile::Identity, z), Err(Error::Domain(_))));
}
