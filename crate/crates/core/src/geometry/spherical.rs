use nalgebra::{Matrix3, Vector3};

use super::{Christoffel, CurvatureReport, RiemannComponents};
use crate::error::{Error, Result};
use crate::ktrig::{kcos, ksin, ktan};
use crate::space::SpaceSpec;

pub(crate) struct Radial {
    pub cr: f64,
    pub sr: f64,
    pub tr: f64,
    pub g: f64,
    pub gr: f64,
    pub grr: f64,
}

impl Radial {
    pub fn new(r: f64, spec: &SpaceSpec) -> Result<Self> {
        let z = spec.z;
        let cr = kcos(z, r);
        if cr <= 0.0 {
            return Err(Error::domain(format!("r={r} lies outside the patch r < π/(2λ₁)")));
        }
        let rp = spec.profile.radial(z, r);
        let h = rp.g * cr;
        if h == 0.0 || !h.is_finite() {
            return Err(Error::domain(format!("conformal factor vanishes at r={r}")));
        }
        Ok(Radial { cr, sr: ksin(z, r), tr: ktan(z, r), g: rp.g, gr: rp.g_r, grr: rp.g_rr })
    }

    /// `h = g·C_z(r)`.
    pub fn h(&self) -> f64 {
        self.g * self.cr
    }
}

/// `ds² = (dr² + κ₂S_z(r)²(dθ² + S_κ₂(θ)² dφ²)) / (g(λ₁r) C_z(r))`.
pub fn metric_spherical(r: f64, theta: f64, spec: &SpaceSpec) -> Result<Matrix3<f64>> {
    let rad = Radial::new(r, spec)?;
    let h = rad.h();
    let st = ksin(spec.kappa2, theta);
    let a = spec.kappa2 * rad.sr * rad.sr / h;
    Ok(Matrix3::from_diagonal(&Vector3::new(1.0 / h, a, a * st * st)))
}

pub fn curvature_spherical(r: f64, theta: f64, spec: &SpaceSpec) -> Result<CurvatureReport> {
    let z = spec.z;
    let k2 = spec.kappa2;
    let rad = Radial::new(r, spec)?;
    let Radial { cr, sr, tr, g, gr, grr } = rad;
    let st = ksin(k2, theta);
    let ct = kcos(k2, theta);
    if sr.abs() < 1e-300 || tr == 0.0 {
        return Err(Error::domain("curvature is singular at r = 0"));
    }
    if st == 0.0 {
        return Err(Error::domain(format!("curvature is singular at θ={theta}")));
    }
    let metric = metric_spherical(r, theta, spec)?;
    let lg = gr / g;
    let a = (1.0 + cr * cr) / (2.0 * sr * cr) - 0.5 * lg;

    let mut gam = [[[0.0; 3]; 3]; 3];
    gam[0][0][0] = 0.5 * (z * tr - lg);
    gam[0][1][1] = -k2 * sr * sr * a;
    gam[0][2][2] = -k2 * sr * sr * st * st * a;
    gam[1][2][2] = -st * ct;
    for (i, v) in [(1, a), (2, a)] {
        gam[i][i][0] = v;
        gam[i][0][i] = v;
    }
    gam[2][2][1] = ct / st;
    gam[2][1][2] = ct / st;
    let christoffel: Christoffel = gam;

    // R^θ_{rθr} and R^φ_{θφθ}
    let r1 = 0.5 * (lg / tr + grr / g - lg * lg - z * z * tr * tr);
    let r2 = k2 * (1.0 - sr * sr * a * a);
    let h = rad.h();
    let mut pairs = Matrix3::zeros();
    pairs[(0, 0)] = k2 * sr * sr * r1 / h;
    pairs[(1, 1)] = k2 * sr * sr * st * st * r1 / h;
    pairs[(2, 2)] = k2 * sr * sr * st * st * r2 / h;
    let riemann = RiemannComponents::from_pairs(pairs);

    let r_thth = k2
        * sr
        * sr
        * ((1.0 + 2.0 * cr * cr) * lg / (2.0 * sr * cr) + 0.5 * grr / g - 0.75 * lg * lg - 0.75 * z * z * tr * tr);
    let ricci = Matrix3::from_diagonal(&Vector3::new(2.0 * r1, r_thth, st * st * r_thth));

    let k_r = 0.5 * cr * (gr / tr + grr - gr * gr / g - z * z * tr * tr * g);
    let k_tp = cr * g * (1.0 / (sr * sr) - a * a);
    let scalar = 2.0
        * cr
        * ((1.0 + 3.0 * cr * cr) * gr / (2.0 * sr * cr) + grr - 1.25 * gr * gr / g - 1.25 * z * z * tr * tr * g);
    Ok(CurvatureReport { metric, christoffel, riemann, ricci, sectional: [k_r, k_r, k_tp], scalar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{ConformalProfile, Sign};

    fn spec(z: f64, k2: f64, profile: ConformalProfile) -> SpaceSpec {
        SpaceSpec::new(z, k2, profile, [0.0; 3]).unwrap()
    }

    #[test]
    fn table_one_entries() {
        let (r, th) = (0.7_f64, 0.4_f64);
        let g = metric_spherical(r, th, &spec(1.0, 1.0, ConformalProfile::Identity)).unwrap();
        let c = r.cos();
        assert!((g[(0, 0)] - 1.0 / c).abs() < 1e-14);
        assert!((g[(2, 2)] - r.sin().powi(2) * th.sin().powi(2) / c).abs() < 1e-14);
        let ds = metric_spherical(r, th, &spec(-1.0, -1.0, ConformalProfile::Identity)).unwrap();
        let ch = r.cosh();
        assert!((ds[(0, 0)] - 1.0 / ch).abs() < 1e-14);
        assert!((ds[(1, 1)] + r.sinh().powi(2) / ch).abs() < 1e-14);
        assert!((ds[(2, 2)] + r.sinh().powi(2) * th.sinh().powi(2) / ch).abs() < 1e-14);
    }

    #[test]
    fn contraction_limit() {
        let (r, th) = (1.3_f64, 0.6_f64);
        for &k2 in &[1.0, -1.0, 2.5] {
            let g = metric_spherical(r, th, &spec(1e-10, k2, ConformalProfile::CosCubed)).unwrap();
            let st = ksin(k2, th);
            let want = Vector3::new(1.0, k2 * r * r, k2 * r * r * st * st);
            assert!((g.diagonal() - want).abs().max() < 1e-8);
        }
    }

    #[test]
    fn explicit_scalar_curvatures() {
        let z = 0.6;
        let cc = curvature_spherical(0.9, 0.7, &spec(z, 1.0, ConformalProfile::Exponential(Sign::Plus))).unwrap();
        assert!((cc.scalar - 6.0 * z).abs() < 1e-12);
        let id = curvature_spherical(0.5, 0.7, &spec(1.0, 1.0, ConformalProfile::Identity)).unwrap();
        assert!((id.scalar + 2.5 * 0.5f64.sin() * 0.5f64.tan()).abs() < 1e-13);
        let c3 = curvature_spherical(0.4, 0.7, &spec(1.0, 1.0, ConformalProfile::CosCubed)).unwrap();
        assert!((c3.scalar + 0.4f64.cos().powi(2) * (17.0 + 0.8f64.cos())).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_are_mutually_consistent() {
        for profile in
            [ConformalProfile::Identity, ConformalProfile::PowerCosine { k: 0.3 }, ConformalProfile::CosCubed]
        {
            for &(z, k2) in &[(0.8, 1.0), (-0.5, -1.0), (0.3, 2.0)] {
                let rep = curvature_spherical(0.6, 0.5, &spec(z, k2, profile.clone())).unwrap();
                assert!(rep.identity_residual().abs() < 1e-12 * rep.scalar.abs().max(1.0));
                let ric = rep.ricci_from_riemann();
                assert!((ric - rep.ricci).abs().max() < 1e-12 * rep.ricci.abs().max().max(1.0));
                let sec = rep.sectional_from_riemann();
                for k in 0..3 {
                    assert!((sec[k] - rep.sectional[k]).abs() < 1e-12 * sec[k].abs().max(1.0));
                }
            }
        }
    }
}
