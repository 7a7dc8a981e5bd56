//! The map `q ↦ (r, θ, φ)` defined by `cos²(λ₁r) = e^{−2zq²}` and the three
//! angular relations, extended to momenta by the cotangent lift.
//!
//! Written through the auxiliary ambient vector
//! `V = (X, Y, Z) = T_z(r)(cos Θ, sin Θ cos φ, sin Θ sin φ)`, `Θ = λ₂θ`, with
//! `Z = √2 q₁ √ε(w₁)`, `Y = √2 q₂ e^{w₁/2} √ε(w₂)`,
//! `X = √2 q₃ e^{(w₁+w₂)/2} √ε(w₃)`, `wᵢ = 2zqᵢ²`, `ε(w) = (eʷ−1)/w`.

use std::f64::consts::{SQRT_2, TAU};

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};
use crate::ktrig::{expm1c, katan, kcos, ktan, log1pc};
use crate::space::{PhasePointCartesian, PhasePointSpherical, SpaceSpec};

fn require_positive_signature(spec: &SpaceSpec) -> Result<f64> {
    if spec.kappa2 <= 0.0 {
        return Err(Error::domain("the Cartesian chart covers κ₂ > 0 only"));
    }
    Ok(spec.kappa2.sqrt())
}

struct Ambient {
    v: Vector3<f64>,
    dv: Matrix3<f64>,
}

fn ambient(q: &[f64; 3], z: f64) -> Ambient {
    let w = q.map(|v| 2.0 * z * v * v);
    let s = w.map(|w| expm1c(w).sqrt());
    let e1 = (0.5 * w[0]).exp();
    let e12 = (0.5 * (w[0] + w[1])).exp();
    let zc = SQRT_2 * q[0] * s[0];
    let yc = SQRT_2 * q[1] * e1 * s[1];
    let xc = SQRT_2 * q[2] * e12 * s[2];
    let lead = |i: usize| SQRT_2 * w[i].exp() / s[i];
    let dv = Matrix3::new(
        2.0 * z * q[0] * xc,
        2.0 * z * q[1] * xc,
        e12 * lead(2),
        2.0 * z * q[0] * yc,
        e1 * lead(1),
        0.0,
        lead(0),
        0.0,
        0.0,
    );
    Ambient { v: Vector3::new(xc, yc, zc), dv }
}

struct Polar {
    r: f64,
    theta: f64,
    phi: f64,
    jac: Matrix3<f64>,
}

fn polar(q: &[f64; 3], spec: &SpaceSpec) -> Result<Polar> {
    let l2 = require_positive_signature(spec)?;
    let z = spec.z;
    let Ambient { v, dv } = ambient(q, z);
    let (xc, yc, zc) = (v[0], v[1], v[2]);
    let rho2 = v.norm_squared();
    let rho = rho2.sqrt();
    let sig2 = yc * yc + zc * zc;
    let sig = sig2.sqrt();
    if rho == 0.0 || sig == 0.0 {
        return Err(Error::domain("the chart is singular at the origin and on the q₃ axis"));
    }
    let dr = 1.0 / (1.0 + z * rho2);
    let dsph = Matrix3::new(
        dr * xc / rho,
        dr * yc / rho,
        dr * zc / rho,
        -sig / rho2 / l2,
        xc * yc / (rho2 * sig) / l2,
        xc * zc / (rho2 * sig) / l2,
        0.0,
        -zc / sig2,
        yc / sig2,
    );
    let mut phi = zc.atan2(yc);
    if phi < 0.0 {
        phi += TAU;
    }
    Ok(Polar { r: katan(z, rho), theta: sig.atan2(xc) / l2, phi, jac: dsph * dv })
}

/// `∂(r, θ, φ)/∂(q₁, q₂, q₃)`.
pub fn chart_jacobian(q: &[f64; 3], spec: &SpaceSpec) -> Result<Matrix3<f64>> {
    Ok(polar(q, spec)?.jac)
}

pub fn to_spherical(point: &PhasePointCartesian, spec: &SpaceSpec) -> Result<PhasePointSpherical> {
    let pol = polar(&point.q, spec)?;
    let jt_inv = pol.jac.transpose().try_inverse().ok_or_else(|| Error::domain("degenerate chart Jacobian"))?;
    let ps = jt_inv * Vector3::from(point.p);
    Ok(PhasePointSpherical::new([pol.r, pol.theta, pol.phi], [ps[0], ps[1], ps[2]]))
}

/// `q²` with `log1p(z a)/(2z) = q²` for a squared ambient component `a`.
fn square_from(a: f64, z: f64) -> Result<f64> {
    let t = z * a;
    if t <= -1.0 {
        return Err(Error::domain("point lies outside the image of the chart"));
    }
    Ok(0.5 * a * log1pc(t))
}

pub fn to_cartesian(point: &PhasePointSpherical, spec: &SpaceSpec) -> Result<PhasePointCartesian> {
    let l2 = require_positive_signature(spec)?;
    let z = spec.z;
    if point.r <= 0.0 || kcos(z, point.r) <= 0.0 {
        return Err(Error::domain(format!("r={} lies outside the patch", point.r)));
    }
    let rho = ktan(z, point.r);
    let th = l2 * point.theta;
    let (xc, yc, zc) = (rho * th.cos(), rho * th.sin() * point.phi.cos(), rho * th.sin() * point.phi.sin());
    let q1s = square_from(zc * zc, z)?;
    let w1 = 2.0 * z * q1s;
    let q2s = square_from(yc * yc * (-w1).exp(), z)?;
    let w2 = 2.0 * z * q2s;
    let q3s = square_from(xc * xc * (-w1 - w2).exp(), z)?;
    let q = [q1s.sqrt().copysign(zc), q2s.sqrt().copysign(yc), q3s.sqrt().copysign(xc)];
    let jac = chart_jacobian(&q, spec)?;
    let p = jac.transpose() * Vector3::new(point.p_r, point.p_theta, point.p_phi);
    Ok(PhasePointCartesian::new(q, [p[0], p[1], p[2]]))
}
