use nalgebra::Matrix3;

use super::{curvature_from_connection, Christoffel, CurvatureReport};
use crate::error::{Error, Result};
use crate::ktrig::{one_minus_ucoth_over_u, sinhc};
use crate::space::SpaceSpec;

struct Point {
    z: f64,
    q: [f64; 3],
    u: [f64; 3],
    shc: [f64; 3],
    x: f64,
}

impl Point {
    fn new(q: &[f64; 3], spec: &SpaceSpec) -> Result<Self> {
        let z = spec.z;
        let u = q.map(|v| z * v * v);
        let x = u.iter().sum::<f64>();
        let f = spec.profile.f(x);
        if f == 0.0 || !f.is_finite() {
            return Err(Error::domain(format!("conformal factor f({x}) = {f}")));
        }
        Ok(Point { z, q: *q, u, shc: u.map(sinhc), x })
    }
}

/// Metric normalized so that `½ gⁱʲ pᵢ pⱼ = ½ J₊ f(zJ₋)` (identity in the flat
/// limit). The explicit line element is twice this; see
/// [`line_element_cartesian`].
pub fn metric_cartesian(q: &[f64; 3], spec: &SpaceSpec) -> Result<Matrix3<f64>> {
    let p = Point::new(q, spec)?;
    let f = spec.profile.f(p.x);
    let [u1, u2, u3] = p.u;
    let e = [(-u2 - u3).exp(), (u1 - u3).exp(), (u1 + u2).exp()];
    Ok(Matrix3::from_diagonal(&nalgebra::Vector3::from_fn(|i, _| e[i] / (p.shc[i] * f))))
}

/// The explicit `ds²`, equal to `2 × metric_cartesian` and to the pull-back of
/// [`super::metric_spherical`].
pub fn line_element_cartesian(q: &[f64; 3], spec: &SpaceSpec) -> Result<Matrix3<f64>> {
    Ok(metric_cartesian(q, spec)? * 2.0)
}

pub fn christoffel_cartesian(q: &[f64; 3], spec: &SpaceSpec) -> Result<Christoffel> {
    let p = Point::new(q, spec)?;
    let z = p.z;
    let ff = spec.profile.log_derivative(p.x);
    let mut g = [[[0.0; 3]; 3]; 3];
    for i in 0..3 {
        g[i][i][i] = z * p.q[i] * (one_minus_ucoth_over_u(p.u[i]) - ff);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let a = -z * p.q[j] * (1.0 + ff);
        let b = z * p.q[i] * (1.0 - ff);
        g[i][i][j] = a;
        g[i][j][i] = a;
        g[j][i][j] = b;
        g[j][j][i] = b;
        let (up, down) =
            if (i, j) == (0, 2) { (p.x + p.u[1], -p.x - p.u[1]) } else { (p.u[i] + p.u[j], -p.u[i] - p.u[j]) };
        g[i][j][j] = -z * up.exp() * p.q[i] * p.shc[i] / p.shc[j] * (1.0 - ff);
        g[j][i][i] = z * down.exp() * p.q[j] * p.shc[j] / p.shc[i] * (1.0 + ff);
    }
    Ok(g)
}

/// Explicit sectional curvatures `(K₁₂, K₁₃, K₂₃)` and scalar `K(x)` of the line
/// element.
fn explicit_curvatures(p: &Point, spec: &SpaceSpec) -> ([f64; 3], f64) {
    let z = p.z;
    let x = p.x;
    let (f, f1, f2) = (spec.profile.f(x), spec.profile.df(x), spec.profile.d2f(x));
    let a = f + f1 * f1 / f;
    let e2x = (2.0 * x).exp();
    let b = 2.0 * (1.0 + e2x) * f1;
    let e3 = (2.0 * p.u[2]).exp();
    let e23 = (2.0 * (p.u[1] + p.u[2])).exp();
    let pre = 0.25 * z * (-x).exp();
    let k12 = pre * ((1.0 + e3 - 2.0 * e2x) * a + b - 2.0 * (e3 - e2x) * f2);
    let k13 = pre * ((2.0 - e3 + e23 - 2.0 * e2x) * a + b - 2.0 * (1.0 - e3 + e23 - e2x) * f2);
    let k23 = pre * ((2.0 - e23 - e2x) * a + b - 2.0 * (1.0 - e23) * f2);
    let scalar = z * (6.0 * f1 * x.cosh() + (4.0 * f2 - 5.0 * f - 5.0 * f1 * f1 / f) * x.sinh());
    ([k12, k13, k23], scalar)
}

/// Curvature of the explicit line element. Connection and sectional/scalar
/// curvatures are closed forms; Riemann and Ricci come from central
/// differences of the closed-form connection.
pub fn curvature_cartesian(q: &[f64; 3], spec: &SpaceSpec) -> Result<CurvatureReport> {
    let p = Point::new(q, spec)?;
    let metric = line_element_cartesian(q, spec)?;
    let gamma = christoffel_cartesian(q, spec)?;
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for c in 0..3 {
        let h = f64::EPSILON.cbrt() * q[c].abs().max(1.0);
        let (mut qp, mut qm) = (*q, *q);
        qp[c] += h;
        qm[c] -= h;
        let h = (qp[c] - qm[c]) / 2.0;
        let gp = christoffel_cartesian(&qp, spec)?;
        let gm = christoffel_cartesian(&qm, spec)?;
        for a in 0..3 {
            for b in 0..3 {
                for d in 0..3 {
                    dgamma[c][a][b][d] = (gp[a][b][d] - gm[a][b][d]) / (2.0 * h);
                }
            }
        }
    }
    let (riemann, ricci) = curvature_from_connection(&metric, &gamma, &dgamma);
    let (sectional, scalar) = explicit_curvatures(&p, spec);
    Ok(CurvatureReport { metric, christoffel: gamma, riemann, ricci, sectional, scalar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{ConformalProfile, Sign};

    fn spec(z: f64, profile: ConformalProfile) -> SpaceSpec {
        SpaceSpec::free(z, profile).unwrap()
    }

    #[test]
    fn flat_and_origin_metric() {
        let g = metric_cartesian(&[0.3, -1.2, 2.0], &spec(1e-10, ConformalProfile::Identity)).unwrap();
        assert!((g - Matrix3::identity()).abs().max() < 1e-8);
        let g0 = metric_cartesian(&[0.0; 3], &spec(1.0, ConformalProfile::Identity)).unwrap();
        assert_eq!(g0, Matrix3::identity());
    }

    #[test]
    fn flat_connection_vanishes() {
        let g = christoffel_cartesian(&[0.5, 0.8, 1.1], &spec(1e-12, ConformalProfile::Identity)).unwrap();
        assert!(g.iter().flatten().flatten().all(|v| v.abs() < 1e-8));
        let g0 = christoffel_cartesian(&[0.0, 0.8, 1.1], &spec(0.4, ConformalProfile::Identity)).unwrap();
        assert!(g0.iter().flatten().flatten().all(|v| v.is_finite()));
    }

    #[test]
    fn constant_curvature_examples() {
        for &z in &[0.7, -0.4] {
            let q = [0.3, 0.5, -0.8];
            let plus = curvature_cartesian(&q, &spec(z, ConformalProfile::Exponential(Sign::Plus))).unwrap();
            let minus = curvature_cartesian(&q, &spec(z, ConformalProfile::Exponential(Sign::Minus))).unwrap();
            for k in 0..3 {
                assert!((plus.sectional[k] - z).abs() < 1e-12);
                assert!((minus.sectional[k] + z).abs() < 1e-12);
            }
            assert!((plus.scalar - 6.0 * z).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_profile_scalar() {
        let q = [0.3, 0.5, 0.2];
        let r = curvature_cartesian(&q, &spec(0.8, ConformalProfile::Identity)).unwrap();
        assert!((r.scalar + 5.0 * 0.8 * (0.8f64 * 0.38).sinh()).abs() < 1e-14);
        assert!(r.identity_residual().abs() < 1e-12);
    }
}
