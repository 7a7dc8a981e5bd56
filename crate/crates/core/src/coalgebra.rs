//! Symplectic realizations of the deformed sl(2) Poisson coalgebra
//!
//! `{J₃,J₊} = 2J₊cosh(zJ₋)`, `{J₃,J₋} = −2 sinh(zJ₋)/z`, `{J₋,J₊} = 4J₃`,
//!
//! with Casimir `C = sinh(zJ₋)/z · J₊ − J₃²`. Here `b` is site-labelled.

use crate::error::{Error, Result};
use crate::fd::{poisson_bracket, Canonical};
use crate::ktrig::sinhc;
use crate::space::{PhasePointCartesian, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformedGenerators {
    pub j_minus: f64,
    pub j_plus: f64,
    pub j_three: f64,
}

/// The three Casimir functions `ℂ⁽²⁾` (sites 1⊗2), `ℂ₍₂₎` (sites 2⊗3) and
/// `ℂ⁽³⁾` (sites 1⊗2⊗3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CasimirValues {
    pub c2: f64,
    pub c2_lower: f64,
    pub c3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketResiduals {
    /// `{J₃,J₊} − 2J₊cosh zJ₋`, `{J₃,J₋} + 2 sinh(zJ₋)/z`, `{J₋,J₊} − 4J₃`.
    pub residuals: [f64; 3],
    /// The bracket values themselves.
    pub lhs: [f64; 3],
}

impl BracketResiduals {
    /// Largest `|rᵢ|/(1+|lhsᵢ|)`.
    pub fn max_scaled(&self) -> f64 {
        (0..3).map(|i| self.residuals[i].abs() / (1.0 + self.lhs[i].abs())).fold(0.0, f64::max)
    }
}

fn centrifugal(spec: &SpaceSpec, q: f64, i: usize, shc: f64) -> Result<f64> {
    let b = spec.b[i];
    if b == 0.0 {
        return Ok(0.0);
    }
    if q == 0.0 {
        return Err(Error::domain(format!("b{} ≠ 0 requires q{} ≠ 0", i + 1, i + 1)));
    }
    Ok(b / (q * q * shc))
}

/// Generators realized on an increasing list of sites (0-based).
pub fn realize_on_sites(state: &PhasePointCartesian, spec: &SpaceSpec, sites: &[usize]) -> Result<DeformedGenerators> {
    if sites.is_empty() || sites.iter().any(|&s| s > 2) || sites.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain(format!("invalid site list {sites:?}")));
    }
    let z = spec.z;
    let q2: Vec<f64> = sites.iter().map(|&i| state.q[i] * state.q[i]).collect();
    let total: f64 = q2.iter().sum();
    let mut before = 0.0;
    let mut out = DeformedGenerators { j_minus: total, j_plus: 0.0, j_three: 0.0 };
    for (k, &i) in sites.iter().enumerate() {
        let after = total - before - q2[k];
        let weight = (z * (after - before)).exp();
        let (q, p) = (state.q[i], state.p[i]);
        let shc = sinhc(z * q2[k]);
        out.j_plus += (shc * p * p + centrifugal(spec, q, i, shc)?) * weight;
        out.j_three += shc * q * p * weight;
        before += q2[k];
    }
    Ok(out)
}

/// Generators of the `arity`-site realization on sites `1..=arity`.
pub fn realize_generators(state: &PhasePointCartesian, spec: &SpaceSpec, arity: usize) -> Result<DeformedGenerators> {
    match arity {
        1 => realize_on_sites(state, spec, &[0]),
        2 => realize_on_sites(state, spec, &[0, 1]),
        3 => realize_on_sites(state, spec, &[0, 1, 2]),
        _ => Err(Error::domain(format!("arity must be 1, 2 or 3, got {arity}"))),
    }
}

/// `sinh(zJ₋)/z · J₊ − J₃²`.
pub fn casimir_from_generators(g: &DeformedGenerators, z: f64) -> f64 {
    g.j_minus * sinhc(z * g.j_minus) * g.j_plus - g.j_three * g.j_three
}

/// Explicit two-site Casimir on sites `i < j`.
fn two_site(state: &PhasePointCartesian, spec: &SpaceSpec, i: usize, j: usize) -> Result<f64> {
    let z = spec.z;
    let (qi, qj, pi, pj) = (state.q[i], state.q[j], state.p[i], state.p[j]);
    let (ui, uj) = (z * qi * qi, z * qj * qj);
    let (si, sj) = (sinhc(ui), sinhc(uj));
    let l = qi * pj - qj * pi;
    let mixed = centrifugal(spec, qi, i, si)? * qj * qj * sj + centrifugal(spec, qj, j, sj)? * qi * qi * si;
    Ok((si * sj * l * l + mixed) * (uj - ui).exp() + spec.b[i] * (2.0 * uj).exp() + spec.b[j] * (-2.0 * ui).exp())
}

fn pair_block(state: &PhasePointCartesian, spec: &SpaceSpec, i: usize, j: usize) -> Result<f64> {
    let z = spec.z;
    let (qi, qj) = (state.q[i], state.q[j]);
    let (si, sj) = (sinhc(z * qi * qi), sinhc(z * qj * qj));
    let l = qi * state.p[j] - qj * state.p[i];
    Ok(si * sj * l * l + centrifugal(spec, qi, i, si)? * qj * qj * sj + centrifugal(spec, qj, j, sj)? * qi * qi * si)
}

/// `(ℂ⁽²⁾, ℂ₍₂₎, ℂ⁽³⁾)` in closed form.
pub fn casimir_values(state: &PhasePointCartesian, spec: &SpaceSpec) -> Result<CasimirValues> {
    let z = spec.z;
    let u: Vec<f64> = state.q.iter().map(|q| z * q * q).collect();
    let [b1, b2, b3] = spec.b;
    let c3 = pair_block(state, spec, 0, 1)? * (-u[0] + u[1] + 2.0 * u[2]).exp()
        + pair_block(state, spec, 0, 2)? * (-u[0] + u[2]).exp()
        + pair_block(state, spec, 1, 2)? * (-2.0 * u[0] - u[1] + u[2]).exp()
        + b1 * (2.0 * (u[1] + u[2])).exp()
        + b2 * (2.0 * (u[2] - u[0])).exp()
        + b3 * (-2.0 * (u[0] + u[1])).exp();
    Ok(CasimirValues { c2: two_site(state, spec, 0, 1)?, c2_lower: two_site(state, spec, 1, 2)?, c3 })
}

/// `ℋ = ½ J₊ f(zJ₋)` on three sites.
pub fn free_hamiltonian(state: &PhasePointCartesian, spec: &SpaceSpec) -> Result<f64> {
    let g = realize_generators(state, spec, 3)?;
    Ok(0.5 * g.j_plus * spec.profile.f(spec.z * g.j_minus))
}

/// Residuals of the three defining brackets, evaluated by finite differences.
pub fn bracket_residuals(state: &PhasePointCartesian, spec: &SpaceSpec) -> Result<BracketResiduals> {
    let gen = |s: &PhasePointCartesian| realize_generators(s, spec, 3);
    let jm = |s: &PhasePointCartesian| gen(s).map(|g| g.j_minus);
    let jp = |s: &PhasePointCartesian| gen(s).map(|g| g.j_plus);
    let j3 = |s: &PhasePointCartesian| gen(s).map(|g| g.j_three);
    let g = gen(state)?;
    let z = spec.z;
    let zj = z * g.j_minus;
    let lhs = [poisson_bracket(j3, jp, state)?, poisson_bracket(j3, jm, state)?, poisson_bracket(jm, jp, state)?];
    let rhs = [2.0 * g.j_plus * zj.cosh(), -2.0 * g.j_minus * sinhc(zj), 4.0 * g.j_three];
    Ok(BracketResiduals { residuals: [lhs[0] - rhs[0], lhs[1] - rhs[1], lhs[2] - rhs[2]], lhs })
}

/// A generator or Casimir as a phase-space function, for bracket audits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    JMinus,
    JPlus,
    JThree,
    C2,
    C2Lower,
    C3,
    FreeHamiltonian,
}

impl Observable {
    pub fn eval<S: Canonical>(self, state: &S, spec: &SpaceSpec, sites: &[usize]) -> Result<f64> {
        let s = PhasePointCartesian::from_array(&state.to_phase());
        match self {
            Observable::JMinus => realize_on_sites(&s, spec, sites).map(|g| g.j_minus),
            Observable::JPlus => realize_on_sites(&s, spec, sites).map(|g| g.j_plus),
            Observable::JThree => realize_on_sites(&s, spec, sites).map(|g| g.j_three),
            Observable::C2 => casimir_values(&s, spec).map(|c| c.c2),
            Observable::C2Lower => casimir_values(&s, spec).map(|c| c.c2_lower),
            Observable::C3 => casimir_values(&s, spec).map(|c| c.c3),
            Observable::FreeHamiltonian => free_hamiltonian(&s, spec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::ConformalProfile;

    fn spec(z: f64, b: [f64; 3]) -> SpaceSpec {
        SpaceSpec::new(z, 1.0, ConformalProfile::Identity, b).unwrap()
    }

    #[test]
    fn undeformed_limit() {
        let s = PhasePointCartesian::new([1.0, 2.0, 3.0], [1.0, 0.0, 0.0]);
        let g = realize_generators(&s, &spec(0.0, [0.0; 3]), 3).unwrap();
        assert_eq!((g.j_minus, g.j_plus, g.j_three), (14.0, 1.0, 1.0));
    }

    #[test]
    fn single_site_at_rest() {
        let s = PhasePointCartesian::new([1.0, 0.0, 0.0], [0.0; 3]);
        let g = realize_generators(&s, &spec(1.0, [0.0; 3]), 1).unwrap();
        assert_eq!((g.j_minus, g.j_plus, g.j_three), (1.0, 0.0, 0.0));
    }

    #[test]
    fn centrifugal_needs_nonzero_coordinate() {
        let s = PhasePointCartesian::new([0.0, 1.0, 1.0], [0.1; 3]);
        assert!(matches!(realize_generators(&s, &spec(0.5, [0.3, 0.0, 0.0]), 3), Err(Error::Domain(_))));
        assert!(realize_generators(&s, &spec(0.5, [0.0, 0.3, 0.0]), 3).is_ok());
        assert!(realize_generators(&s, &spec(0.5, [0.0; 3]), 4).is_err());
    }

    #[test]
    fn explicit_casimirs_equal_coproduct_casimir() {
        let s = PhasePointCartesian::new([0.8, -1.1, 0.6], [0.3, 0.9, -0.4]);
        for &z in &[0.37, -0.6, 0.0] {
            let sp = spec(z, [0.2, 0.5, 0.7]);
            let c = casimir_values(&s, &sp).unwrap();
            let g12 = realize_on_sites(&s, &sp, &[0, 1]).unwrap();
            let g23 = realize_on_sites(&s, &sp, &[1, 2]).unwrap();
            let g123 = realize_generators(&s, &sp, 3).unwrap();
            assert!((c.c2 - casimir_from_generators(&g12, z)).abs() < 1e-12 * c.c2.abs().max(1.0));
            assert!((c.c2_lower - casimir_from_generators(&g23, z)).abs() < 1e-12 * c.c2_lower.abs().max(1.0));
            assert!((c.c3 - casimir_from_generators(&g123, z)).abs() < 1e-12 * c.c3.abs().max(1.0));
        }
    }

    #[test]
    fn flat_casimirs_are_angular_momenta() {
        let s = PhasePointCartesian::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let c = casimir_values(&s, &spec(0.0, [0.0; 3])).unwrap();
        assert_eq!((c.c2, c.c2_lower, c.c3), (1.0, 0.0, 1.0));
    }

    #[test]
    fn bracket_j_minus_j_plus() {
        let s = PhasePointCartesian::new([0.7, 0.4, 1.1], [0.2, -0.5, 0.3]);
        let sp = spec(0.5, [0.0; 3]);
        let jm = |x: &PhasePointCartesian| realize_generators(x, &sp, 3).map(|g| g.j_minus);
        let jp = |x: &PhasePointCartesian| realize_generators(x, &sp, 3).map(|g| g.j_plus);
        let lhs = poisson_bracket(jm, jp, &s).unwrap();
        let rhs = 4.0 * realize_generators(&s, &sp, 3).unwrap().j_three;
        assert!((lhs - rhs).abs() < 1e-6 * rhs.abs());
    }

    #[test]
    fn bracket_closure_examples() {
        let s = PhasePointCartesian::new([0.9, 1.2, 0.5], [0.4, -0.1, 0.8]);
        for &z in &[0.0, 0.7, -0.4] {
            let r = bracket_residuals(&s, &spec(z, [0.1, 0.3, 0.2])).unwrap();
            assert!(r.max_scaled() < 1e-6, "z={z}: {r:?}");
        }
    }
}
