//! Radial Green function of the Laplace–Beltrami operator.
//!
//! Everything is expressed through `u(r) = λ₁U(λ₁r)`, which is real for
//! either sign of `z`, obeys `u′(r) = √h / S_z(r)²` with `h = g(λ₁r)C_z(r)`,
//! and is normalized by `u(r) = −1/r + o(1)` as `r → 0`.

use crate::error::{Error, Result};
use crate::ktrig::{kcos, kcos_m1, ksin, ktan};
use crate::profile::{ConformalProfile, GreenCase};

use super::quadrature::{integrate, QuadratureSettings};
use super::special::{elliptic_e_hyperbolic, hyp2f1, incomplete_beta, incomplete_elliptic_e};

fn check_patch(r: f64, z: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(format!("Green function needs r > 0, got {r}")));
    }
    if kcos(z, r) <= 0.0 {
        return Err(Error::domain(format!("r={r} lies outside the patch r < π/(2λ₁)")));
    }
    Ok(())
}

/// `ln h(r)` with `h = f(x) C_z(r)`, `x = −ln C_z(r)`.
fn log_h(profile: &ConformalProfile, z: f64, r: f64) -> Result<f64> {
    let x = -kcos_m1(z, r).ln_1p();
    let f = profile.f(x);
    if !(f > 0.0) {
        return Err(Error::domain(format!("h ≤ 0 at r={r}")));
    }
    Ok(profile.log_f(x) - x)
}

/// `u′(r) = √h / S_z(r)²`.
pub fn green_derivative(r: f64, profile: &ConformalProfile, z: f64) -> Result<f64> {
    check_patch(r, z)?;
    let s = ksin(z, r);
    Ok((0.5 * log_h(profile, z, r)?).exp() / (s * s))
}

/// `u(r) = −1/T_z(r) + ∫₀ʳ (√h − 1)/S_z² ds` by adaptive Gauss–Kronrod.
pub fn green_quadrature(r: f64, profile: &ConformalProfile, z: f64) -> Result<f64> {
    green_quadrature_with(r, profile, z, QuadratureSettings::default())
}

pub fn green_quadrature_with(r: f64, profile: &ConformalProfile, z: f64, settings: QuadratureSettings) -> Result<f64> {
    check_patch(r, z)?;
    let remainder = |s: f64| -> Result<f64> {
        let sn = ksin(z, s);
        Ok((0.5 * log_h(profile, z, s)?).exp_m1() / (sn * sn))
    };
    let q = integrate(remainder, 0.0, r, settings)?;
    Ok(q.value - 1.0 / ktan(z, r))
}

fn identity_closed_form(r: f64, z: f64) -> Result<f64> {
    let lead = -kcos(z, r).sqrt() / ktan(z, r);
    if z > 0.0 {
        let l = z.sqrt();
        Ok(lead - l * incomplete_elliptic_e(0.5 * l * r, 2.0)?)
    } else if z < 0.0 {
        let m = (-z).sqrt();
        Ok(lead + m * elliptic_e_hyperbolic(0.5 * m * r, 2.0)?)
    } else {
        Ok(lead)
    }
}

/// `u = −₂F₁(−½, ½−k; ½; z S_z²)/S_z`, valid for either sign of `z`.
pub fn green_power_cosine_hypergeometric(r: f64, k: f64, z: f64) -> Result<f64> {
    check_patch(r, z)?;
    let s = ksin(z, r);
    Ok(-hyp2f1(-0.5, 0.5 - k, 0.5, z * s * s)? / s)
}

/// `u = −(λ₁/2) B(1/sin²(λ₁r); 1−k, ½+k)` for `z > 0`.
pub fn green_power_cosine_beta(r: f64, k: f64, z: f64) -> Result<f64> {
    check_patch(r, z)?;
    if z <= 0.0 {
        return Err(Error::domain("the incomplete-beta form needs z > 0"));
    }
    let l = z.sqrt();
    let sn = (l * r).sin();
    Ok(-0.5 * l * incomplete_beta(1.0 / (sn * sn), 1.0 - k, 0.5 + k)?)
}

/// The explicit closed forms.
pub fn green_closed_form(r: f64, case: GreenCase, z: f64) -> Result<f64> {
    check_patch(r, z)?;
    match case {
        GreenCase::ConstantCurvature => Ok(-1.0 / ktan(z, r)),
        GreenCase::CosCubed => Ok(-z * r - 1.0 / ktan(z, r)),
        GreenCase::Identity => identity_closed_form(r, z),
        GreenCase::PowerCosine(k) => {
            if (k - 1.0).abs() < 1e-12 {
                return Err(Error::domain("k = 1 is excluded from the power-cosine family"));
            }
            if z > 0.0 {
                green_power_cosine_beta(r, k, z)
            } else {
                green_power_cosine_hypergeometric(r, k, z)
            }
        }
    }
}

/// Closed form when the profile has one, quadrature otherwise.
pub fn green_value(r: f64, profile: &ConformalProfile, z: f64) -> Result<f64> {
    match profile.green_case() {
        Some(case) => green_closed_form(r, case, z),
        None => green_quadrature(r, profile, z),
    }
}

/// Green function of one space.
#[derive(Debug, Clone)]
pub struct GreenFunction {
    pub profile: ConformalProfile,
    pub z: f64,
}

impl GreenFunction {
    pub fn new(profile: ConformalProfile, z: f64) -> Self {
        GreenFunction { profile, z }
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        green_value(r, &self.profile, self.z)
    }

    pub fn derivative(&self, r: f64) -> Result<f64> {
        green_derivative(r, &self.profile, self.z)
    }

    pub fn quadrature(&self, r: f64) -> Result<f64> {
        green_quadrature(r, &self.profile, self.z)
    }

    /// `(S_z²/√h)·u′` from a fourth-order central difference of `value`;
    /// identically 1.
    pub fn flux(&self, r: f64) -> Result<f64> {
        let h = 1e-3 * r.max(1e-3);
        let v = |k: f64| self.value(r + k * h);
        let d = (v(-2.0)? - 8.0 * v(-1.0)? + 8.0 * v(1.0)? - v(2.0)?) / (12.0 * h);
        let s = ksin(self.z, r);
        Ok(s * s * d / (0.5 * log_h(&self.profile, self.z, r)?).exp())
    }
}
