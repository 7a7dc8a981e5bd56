//! Hamiltonians with central and centrifugal terms, their constants of
//! motion, Hamilton's equations and the radial reduction.
//!
//! `SpaceSpec::b` carries the spherical labels here: `b₁/cos²θ`,
//! `b₂/cos²φ`, `b₃/sin²φ`. The Hamiltonian is
//!
//! `H = ½ g C_z(r) (p_r² + C⁽³⁾/(κ₂ S_z(r)²)) + 𝒰(r)`
//!
//! with canonical momenta. Through the coordinate map it equals
//! `¼ J₊ f(zJ₋) + 𝒰` evaluated with [`SpaceSpec::cartesian_partner`].

mod integrator;
mod radial;

pub use integrator::{
    integrate, integrate_with, IntegrationError, IntegrationOptions, InvariantSample, StepStats, Termination,
    Trajectory,
};
pub use radial::{radial_reduce, radial_reduce_on, RadialProblem};

use crate::coalgebra::{casimir_values, free_hamiltonian, realize_generators, CasimirValues};
use crate::error::{Error, Result};
use crate::geometry::{to_cartesian, to_spherical};
use crate::ktrig::{expm1c, katan, kcos, ksin, ktan, sinhc};
use crate::potentials::{green_derivative, green_value, RadialPotential};
use crate::space::{PhasePoint, PhasePointCartesian, PhasePointSpherical, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Representation {
    Cartesian,
    #[default]
    Spherical,
}

#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    pub space: SpaceSpec,
    pub potential: Option<RadialPotential>,
    pub representation: Representation,
}

/// `(C⁽²⁾, C₍₂₎, C⁽³⁾, H)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrals {
    pub c2: f64,
    pub c2_lower: f64,
    pub c3: f64,
    pub h: f64,
}

impl Integrals {
    pub fn as_array(&self) -> [f64; 4] {
        [self.h, self.c2, self.c2_lower, self.c3]
    }
}

impl HamiltonianSpec {
    pub fn new(space: SpaceSpec, potential: Option<RadialPotential>) -> Self {
        HamiltonianSpec { space, potential, representation: Representation::Spherical }
    }

    pub fn geodesic(space: SpaceSpec) -> Self {
        HamiltonianSpec::new(space, None)
    }

    /// `(𝒰(r), 𝒰′(r))`.
    pub fn potential_terms(&self, r: f64) -> Result<(f64, f64)> {
        match self.potential {
            None => Ok((0.0, 0.0)),
            Some(kind) => {
                let z = self.space.z;
                let u = green_value(r, &self.space.profile, z)?;
                let du = green_derivative(r, &self.space.profile, z)?;
                kind.compose(u, du)
            }
        }
    }
}

/// `v`, or a domain error when the trigonometric factor `v` is zero to
/// working precision.
fn nonzero(v: f64, what: &str) -> Result<f64> {
    if v.abs() <= SINGULAR_FACTOR || !v.is_finite() {
        Err(Error::domain(format!("{what} vanishes")))
    } else {
        Ok(v)
    }
}

const SINGULAR_FACTOR: f64 = 4.0 * f64::EPSILON;

/// Angular pieces shared by the integrals and the flow.
struct Angular {
    st: f64,
    ct: f64,
    cphi: f64,
    sphi: f64,
    /// `C⁽²⁾`
    p: f64,
    /// `C⁽³⁾`
    q: f64,
}

fn angular(s: &PhasePointSpherical, space: &SpaceSpec) -> Result<Angular> {
    let k2 = space.kappa2;
    let [b1, b2, b3] = space.b;
    let st = ksin(k2, s.theta);
    let ct = kcos(k2, s.theta);
    let (sphi, cphi) = s.phi.sin_cos();
    let mut p = s.p_phi * s.p_phi;
    if b2 != 0.0 {
        p += k2 * b2 / nonzero(cphi, "cos φ")?.powi(2);
    }
    if b3 != 0.0 {
        p += k2 * b3 / nonzero(sphi, "sin φ")?.powi(2);
    }
    let mut q = s.p_theta * s.p_theta;
    if b1 != 0.0 {
        q += k2 * b1 / nonzero(ct, "cos λ₂θ")?.powi(2);
    }
    if p != 0.0 {
        q += p / nonzero(st, "sin λ₂θ")?.powi(2);
    }
    Ok(Angular { st, ct, cphi, sphi, p, q })
}

struct RadialPart {
    cr: f64,
    sr: f64,
    g: f64,
    gr: f64,
}

fn radial_part(r: f64, space: &SpaceSpec) -> Result<RadialPart> {
    let z = space.z;
    let cr = kcos(z, r);
    if cr <= 0.0 || r <= 0.0 {
        return Err(Error::domain(format!("r={r} lies outside the patch")));
    }
    let rp = space.profile.radial(z, r);
    Ok(RadialPart { cr, sr: ksin(z, r), g: rp.g, gr: rp.g_r })
}

fn spherical_hamiltonian(s: &PhasePointSpherical, hspec: &HamiltonianSpec) -> Result<f64> {
    let space = &hspec.space;
    let ang = angular(s, space)?;
    let rad = radial_part(s.r, space)?;
    let big_g = rad.g * rad.cr;
    let mut kin = s.p_r * s.p_r;
    if ang.q != 0.0 {
        kin += ang.q / (space.kappa2 * nonzero(rad.sr, "sin λ₁r")?.powi(2));
    }
    Ok(0.5 * big_g * kin + hspec.potential_terms(s.r)?.0)
}

/// `r(q)` from `T_z(r)² = (e^{2zq²} − 1)/z`.
pub fn radius_of(q: &[f64; 3], z: f64) -> f64 {
    let q2: f64 = q.iter().map(|v| v * v).sum();
    let rho = (2.0 * q2 * expm1c(2.0 * z * q2)).sqrt();
    katan(z, rho)
}

fn cartesian_hamiltonian(s: &PhasePointCartesian, hspec: &HamiltonianSpec) -> Result<f64> {
    let site = hspec.space.cartesian_partner();
    let kinetic = 0.5 * free_hamiltonian(s, &site)?;
    let pot = match hspec.potential {
        None => 0.0,
        Some(_) => hspec.potential_terms(radius_of(&s.q, site.z))?.0,
    };
    Ok(kinetic + pot)
}

/// The Hamiltonian at a phase point of either kind.
pub fn hamiltonian(state: &PhasePoint, hspec: &HamiltonianSpec) -> Result<f64> {
    match state {
        PhasePoint::Spherical(s) => spherical_hamiltonian(s, hspec),
        PhasePoint::Cartesian(c) => cartesian_hamiltonian(c, hspec),
    }
}

/// Explicit spherical `C⁽²⁾`, `C₍₂₎`, `C⁽³⁾` (with b-terms) and `H`.
pub fn integrals_of_motion(state: &PhasePointSpherical, hspec: &HamiltonianSpec) -> Result<Integrals> {
    let space = &hspec.space;
    let k2 = space.kappa2;
    let [b1, b2, _] = space.b;
    let ang = angular(state, space)?;
    let tt = nonzero(ktan(k2, state.theta), "tan λ₂θ")?;
    let lead = ang.cphi * state.p_theta - ang.sphi * state.p_phi / tt;
    let mut c2_lower = lead * lead;
    if b1 != 0.0 {
        c2_lower += k2 * k2 * b1 * tt * tt * ang.cphi * ang.cphi;
    }
    if b2 != 0.0 {
        c2_lower += k2 * b2 / (tt * nonzero(ang.cphi, "cos φ")?).powi(2);
    }
    Ok(Integrals { c2: ang.p, c2_lower, c3: ang.q, h: spherical_hamiltonian(state, hspec)? })
}

/// `C⁽³⁾` rebuilt from a given `C⁽²⁾` through the separated chain.
pub fn c3_from_chain(theta: f64, p_theta: f64, c2: f64, space: &SpaceSpec) -> f64 {
    let k2 = space.kappa2;
    let st = ksin(k2, theta);
    let ct = kcos(k2, theta);
    p_theta * p_theta + k2 * space.b[0] / (ct * ct) + c2 / (st * st)
}

/// `ℐ = sinh(zq₁²)/(2zq₁²) e^{zq₁²} p₁²`.
pub fn extra_integral_staeckel(state: &PhasePointCartesian, spec: &SpaceSpec) -> f64 {
    let u = spec.z * state.q[0] * state.q[0];
    0.5 * sinhc(u) * u.exp() * state.p[0] * state.p[0]
}

/// Whether `ℐ` is a constant of the motion for this Hamiltonian.
pub fn staeckel_is_conserved(hspec: &HamiltonianSpec) -> bool {
    hspec.space.profile.exponent() == Some(1.0) && !hspec.space.has_b() && hspec.potential.is_none()
}

/// Phase velocity `(∂H/∂p, −∂H/∂q)` in spherical variables.
pub fn flow_derivatives(state: &PhasePointSpherical, hspec: &HamiltonianSpec) -> Result<[f64; 6]> {
    let space = &hspec.space;
    let k2 = space.kappa2;
    let z = space.z;
    let [b1, b2, b3] = space.b;
    let ang = angular(state, space)?;
    let rad = radial_part(state.r, space)?;
    let big_g = rad.g * rad.cr;
    let dg = rad.gr * rad.cr - rad.g * z * rad.sr;
    let sr2 = nonzero(rad.sr, "sin λ₁r")?.powi(2);
    let st2 = nonzero(ang.st, "sin λ₂θ")?.powi(2);
    let (_, du) = hspec.potential_terms(state.r)?;

    let dr = big_g * state.p_r;
    let dth = big_g * state.p_theta / (k2 * sr2);
    let dph = big_g * state.p_phi / (k2 * sr2 * st2);

    let dh_dr =
        0.5 * dg * (state.p_r * state.p_r + ang.q / (k2 * sr2)) - big_g * ang.q * rad.cr / (k2 * sr2 * rad.sr) + du;
    let mut dq_dth = -2.0 * ang.p * ang.ct / (st2 * ang.st);
    if b1 != 0.0 {
        dq_dth += 2.0 * k2 * k2 * b1 * ang.st / ang.ct.powi(3);
    }
    let mut dp_dph = 0.0;
    if b2 != 0.0 {
        dp_dph += 2.0 * k2 * b2 * ang.sphi / ang.cphi.powi(3);
    }
    if b3 != 0.0 {
        dp_dph -= 2.0 * k2 * b3 * ang.cphi / ang.sphi.powi(3);
    }
    let dh_dth = 0.5 * big_g / (k2 * sr2) * dq_dth;
    let dh_dph = 0.5 * big_g / (k2 * sr2 * st2) * dp_dph;
    Ok([dr, dth, dph, -dh_dr, -dh_dth, -dh_dph])
}

/// Spherical integrals from the coalgebra functions under the canonical map:
/// `C⁽²⁾ = ℂ⁽²⁾`, `C⁽³⁾ = κ₂ℂ⁽³⁾`, `C₍₂₎ = κ₂(ℂ₍₂₎ − κ₂b₂ − b₁)`,
/// `H = ½ℋ + 𝒰`. `casimirs` and `calh` are evaluated with
/// [`SpaceSpec::cartesian_partner`] of `space`.
pub fn spherical_from_coalgebra(casimirs: &CasimirValues, calh: f64, potential: f64, space: &SpaceSpec) -> Integrals {
    let k2 = space.kappa2;
    let [b1, b2, _] = space.b;
    Integrals {
        c2: casimirs.c2,
        c2_lower: k2 * (casimirs.c2_lower - k2 * b2 - b1),
        c3: k2 * casimirs.c3,
        h: 0.5 * calh + potential,
    }
}

/// The relations `H = 2ℋ`, `C⁽²⁾ = 4ℂ⁽²⁾`, `C₍₂₎ = 4λ₂²ℂ₍₂₎`,
/// `C⁽³⁾ = 4λ₂²ℂ⁽³⁾`. They hold for the geodesic flow (b = 0) when the
/// spherical momenta are rescaled to `P = 2p`.
pub fn spherical_from_coalgebra_doubled(casimirs: &CasimirValues, calh: f64, kappa2: f64) -> Integrals {
    Integrals {
        c2: 4.0 * casimirs.c2,
        c2_lower: 4.0 * kappa2 * casimirs.c2_lower,
        c3: 4.0 * kappa2 * casimirs.c3,
        h: 2.0 * calh,
    }
}

/// Evaluate the Cartesian-side coalgebra functions at a spherical state.
pub fn coalgebra_at(state: &PhasePointSpherical, space: &SpaceSpec) -> Result<(CasimirValues, f64)> {
    let site = space.cartesian_partner();
    let cart = to_cartesian(state, &site)?;
    Ok((casimir_values(&cart, &site)?, free_hamiltonian(&cart, &site)?))
}

/// Spherical state of any phase point.
pub fn spherical_state(state: &PhasePoint, space: &SpaceSpec) -> Result<PhasePointSpherical> {
    match state {
        PhasePoint::Spherical(s) => Ok(*s),
        PhasePoint::Cartesian(c) => to_spherical(c, space),
    }
}

/// `ℐ` at a spherical state, through the coordinate map.
pub fn staeckel_at(state: &PhasePointSpherical, space: &SpaceSpec) -> Result<f64> {
    let site = space.cartesian_partner();
    Ok(extra_integral_staeckel(&to_cartesian(state, &site)?, &site))
}

/// Generators at a spherical state (helper for algebraic-form checks).
pub fn generators_at(state: &PhasePointSpherical, space: &SpaceSpec) -> Result<crate::coalgebra::DeformedGenerators> {
    let site = space.cartesian_partner();
    realize_generators(&to_cartesian(state, &site)?, &site, 3)
}
