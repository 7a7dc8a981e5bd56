use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::profile::ConformalProfile;

/// One member of the model family.
///
/// `b` is read in the labelling of the formulas that consume it: site labels
/// (`b_i` pairs with `q_i`) in [`crate::coalgebra`], the explicit spherical
/// labels (`b₁/cos²θ`, `b₂/cos²φ`, `b₃/sin²φ`) in [`crate::dynamics`].
/// [`SpaceSpec::cartesian_partner`] converts between them.
#[derive(Debug, Clone)]
pub struct SpaceSpec {
    pub z: f64,
    pub kappa2: f64,
    pub profile: ConformalProfile,
    pub b: [f64; 3],
}

impl SpaceSpec {
    pub fn new(z: f64, kappa2: f64, profile: ConformalProfile, b: [f64; 3]) -> Result<Self> {
        if !z.is_finite() {
            return Err(Error::domain(format!("z must be finite, got {z}")));
        }
        if !kappa2.is_finite() || kappa2 == 0.0 {
            return Err(Error::domain(format!("kappa2 must be finite and nonzero, got {kappa2}")));
        }
        if b.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("centrifugal coefficients must be finite"));
        }
        profile.validate()?;
        Ok(SpaceSpec { z, kappa2, profile, b })
    }

    /// Unit signature, no centrifugal terms.
    pub fn free(z: f64, profile: ConformalProfile) -> Result<Self> {
        SpaceSpec::new(z, 1.0, profile, [0.0; 3])
    }

    pub fn with_b(mut self, b: [f64; 3]) -> Self {
        self.b = b;
        self
    }

    pub fn has_b(&self) -> bool {
        self.b.iter().any(|&v| v != 0.0)
    }

    /// Largest admissible `r` (`π/2λ₁` for z > 0).
    pub fn patch_radius(&self) -> Option<f64> {
        (self.z > 0.0).then(|| FRAC_PI_2 / self.z.sqrt())
    }

    /// The site-labelled spec whose three-site realization reproduces the
    /// spherical centrifugal terms of `self` through the coordinate map.
    pub fn cartesian_partner(&self) -> SpaceSpec {
        let [b1, b2, b3] = self.b;
        let k = self.kappa2;
        SpaceSpec { b: [k * b3, k * b2, b1], ..self.clone() }
    }

    /// Inverse of [`SpaceSpec::cartesian_partner`].
    pub fn spherical_partner(&self) -> SpaceSpec {
        let [s1, s2, s3] = self.b;
        let k = self.kappa2;
        SpaceSpec { b: [s3, s2 / k, s1 / k], ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePointCartesian {
    pub q: [f64; 3],
    pub p: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePointSpherical {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    pub p_r: f64,
    pub p_theta: f64,
    pub p_phi: f64,
}

/// Canonical coordinates packed as `(q₁,q₂,q₃,p₁,p₂,p₃)`.
pub type PhaseArray = [f64; 6];

impl PhasePointCartesian {
    pub fn new(q: [f64; 3], p: [f64; 3]) -> Self {
        PhasePointCartesian { q, p }
    }

    pub fn to_array(&self) -> PhaseArray {
        [self.q[0], self.q[1], self.q[2], self.p[0], self.p[1], self.p[2]]
    }

    pub fn from_array(a: &PhaseArray) -> Self {
        PhasePointCartesian { q: [a[0], a[1], a[2]], p: [a[3], a[4], a[5]] }
    }
}

impl PhasePointSpherical {
    pub fn new(pos: [f64; 3], mom: [f64; 3]) -> Self {
        PhasePointSpherical { r: pos[0], theta: pos[1], phi: pos[2], p_r: mom[0], p_theta: mom[1], p_phi: mom[2] }
    }

    pub fn to_array(&self) -> PhaseArray {
        [self.r, self.theta, self.phi, self.p_r, self.p_theta, self.p_phi]
    }

    pub fn from_array(a: &PhaseArray) -> Self {
        PhasePointSpherical::new([a[0], a[1], a[2]], [a[3], a[4], a[5]])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhasePoint {
    Cartesian(PhasePointCartesian),
    Spherical(PhasePointSpherical),
}

impl From<PhasePointCartesian> for PhasePoint {
    fn from(p: PhasePointCartesian) -> Self {
        PhasePoint::Cartesian(p)
    }
}

impl From<PhasePointSpherical> for PhasePoint {
    fn from(p: PhasePointSpherical) -> Self {
        PhasePoint::Spherical(p)
    }
}
