//! Green functions and the intrinsic Kepler–Coulomb and oscillator potentials.

mod green;
pub mod quadrature;
pub mod special;

pub use green::{
    green_closed_form, green_derivative, green_power_cosine_beta, green_power_cosine_hypergeometric, green_quadrature,
    green_quadrature_with, green_value, GreenFunction,
};
pub use special::{incomplete_beta, incomplete_elliptic_e};

use crate::coalgebra::DeformedGenerators;
use crate::error::{Error, Result};
use crate::ktrig::sinhc;
use crate::space::SpaceSpec;

/// Smallest `|u|` at which the oscillator `β/u²` is evaluated.
pub const OSCILLATOR_POLE_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialPotential {
    /// `𝒰 = α u`.
    KeplerCoulomb { alpha: f64 },
    /// `𝒰 = β/u²`.
    Oscillator { beta: f64 },
}

impl RadialPotential {
    /// `(𝒰, d𝒰/dr)` given `u` and `u′`.
    pub fn compose(&self, u: f64, du: f64) -> Result<(f64, f64)> {
        match *self {
            RadialPotential::KeplerCoulomb { alpha } => Ok((alpha * u, alpha * du)),
            RadialPotential::Oscillator { beta } => {
                if u.abs() < OSCILLATOR_POLE_GUARD {
                    return Err(Error::domain("oscillator potential at a zero of the Green function"));
                }
                Ok((beta / (u * u), -2.0 * beta * du / (u * u * u)))
            }
        }
    }
}

/// A potential bound to the Green function of one space.
#[derive(Debug, Clone)]
pub struct IntrinsicPotential {
    pub kind: RadialPotential,
    pub green: GreenFunction,
}

impl IntrinsicPotential {
    pub fn new(kind: RadialPotential, spec: &SpaceSpec) -> Self {
        IntrinsicPotential { kind, green: GreenFunction::new(spec.profile.clone(), spec.z) }
    }

    pub fn value(&self, r: f64) -> Result<f64> {
        Ok(self.value_and_derivative(r)?.0)
    }

    pub fn value_and_derivative(&self, r: f64) -> Result<(f64, f64)> {
        self.kind.compose(self.green.value(r)?, self.green.derivative(r)?)
    }
}

pub fn intrinsic_potential(r: f64, kind: RadialPotential, spec: &SpaceSpec) -> Result<f64> {
    IntrinsicPotential::new(kind, spec).value(r)
}

/// The coalgebraic constant-curvature Hamiltonians
/// `ℋ_KC = ½J₊e^{zJ₋} − α√(z e^{−zJ₋}/sinh zJ₋)` and
/// `ℋ_O = ½J₊e^{zJ₋} + β sinh(zJ₋) e^{zJ₋}/z`.
pub fn hamiltonian_algebraic_forms(g: &DeformedGenerators, kind: RadialPotential, z: f64) -> Result<f64> {
    let zj = z * g.j_minus;
    let kinetic = 0.5 * g.j_plus * zj.exp();
    let shc = g.j_minus * sinhc(zj);
    match kind {
        RadialPotential::KeplerCoulomb { alpha } => {
            if !(shc > 0.0) {
                return Err(Error::domain("ℋ_KC is singular at J₋ = 0"));
            }
            Ok(kinetic - alpha * ((-zj).exp() / shc).sqrt())
        }
        RadialPotential::Oscillator { beta } => Ok(kinetic + beta * shc * zj.exp()),
    }
}
