//! Reduction to the radial problem `H = ½G(r)p_r² + V_eff(r)`.

use crate::error::{Error, Result};
use crate::ktrig::{kcos, ksin};

use super::integrator::{run, IntegrationOptions, Stop};
use super::HamiltonianSpec;

const GRID_POINTS: usize = 20_000;

#[derive(Debug, Clone)]
pub struct RadialProblem {
    pub energy: f64,
    pub c3: f64,
    pub hspec: HamiltonianSpec,
    /// Sorted roots of `V_eff(r) = E` on the scanned range.
    pub turning_points: Vec<f64>,
    /// The scanned interval.
    pub range: (f64, f64),
}

struct Radial {
    g: f64,
    dg: f64,
    cr: f64,
    sr: f64,
}

fn radial_terms(r: f64, hspec: &HamiltonianSpec) -> Result<Radial> {
    let z = hspec.space.z;
    let cr = kcos(z, r);
    if r <= 0.0 || cr <= 0.0 {
        return Err(Error::domain(format!("r={r} lies outside the patch")));
    }
    let sr = ksin(z, r);
    let rp = hspec.space.profile.radial(z, r);
    Ok(Radial { g: rp.g * cr, dg: rp.g_r * cr - rp.g * z * sr, cr, sr })
}

impl RadialProblem {
    /// `V_eff(r) = 𝒰(r) + ½G C⁽³⁾/(κ₂ S_z(r)²)`.
    pub fn effective_potential(&self, r: f64) -> Result<f64> {
        Ok(self.effective_potential_and_derivative(r)?.0)
    }

    pub fn effective_potential_and_derivative(&self, r: f64) -> Result<(f64, f64)> {
        let k2 = self.hspec.space.kappa2;
        let t = radial_terms(r, &self.hspec)?;
        let (u, du) = self.hspec.potential_terms(r)?;
        let bar = self.c3 / (k2 * t.sr * t.sr);
        let dbar = -2.0 * self.c3 * t.cr / (k2 * t.sr * t.sr * t.sr);
        Ok((u + 0.5 * t.g * bar, du + 0.5 * (t.dg * bar + t.g * dbar)))
    }

    /// Radial momentum magnitude at `r` on the energy shell.
    pub fn momentum(&self, r: f64) -> Result<f64> {
        let t = radial_terms(r, &self.hspec)?;
        let gap = self.energy - self.effective_potential(r)?;
        if gap < 0.0 {
            return Err(Error::domain(format!("r={r} is classically forbidden")));
        }
        Ok((2.0 * gap / t.g).sqrt())
    }

    /// The turning points enclosing `r`, if the orbit through `r` is bounded.
    pub fn bounds_around(&self, r: f64) -> Option<(f64, f64)> {
        let lo = self.turning_points.iter().rev().find(|&&t| t <= r)?;
        let hi = self.turning_points.iter().find(|&&t| t >= r)?;
        Some((*lo, *hi))
    }

    /// Integrate the 1D radial flow from `(r0, p_r0)`, recording `r` at `times`.
    pub fn integrate(&self, r0: f64, p_r0: f64, times: &[f64], tol: f64) -> Result<Vec<f64>> {
        let t_end = times.iter().copied().fold(0.0, f64::max);
        if t_end <= 0.0 {
            return Ok(vec![r0; times.len()]);
        }
        let opts = IntegrationOptions { output_times: Some(times.to_vec()), ..IntegrationOptions::with_tol(tol) };
        let mut out = Vec::with_capacity(times.len());
        let (_, stop) = run(
            |y: &[f64; 2]| {
                let t = radial_terms(y[0], &self.hspec)?;
                let (_, dv) = self.effective_potential_and_derivative(y[0])?;
                Ok([t.g * y[1], -(0.5 * t.dg * y[1] * y[1] + dv)])
            },
            [r0, p_r0],
            t_end,
            &opts,
            |_| None,
            |t, y| {
                out.push((t, y[0]));
                Ok(())
            },
        );
        match stop {
            Stop::Finished => {}
            Stop::Failed(e) => return Err(e),
            _ => return Err(Error::Numerical("radial integration did not complete".into())),
        }
        Ok(times
            .iter()
            .map(|&t| if t <= 0.0 { r0 } else { out.iter().find(|(s, _)| *s == t).map_or(f64::NAN, |p| p.1) })
            .collect())
    }
}

/// Radial scan interval for a space.
fn scan_range(hspec: &HamiltonianSpec) -> (f64, f64) {
    let z = hspec.space.z;
    let lo = 1e-9;
    if let Some(edge) = hspec.space.patch_radius() {
        (lo, edge * (1.0 - 1e-12))
    } else if z < 0.0 {
        (lo, 50.0 / (-z).sqrt())
    } else {
        (lo, 1e3)
    }
}

fn check_consistency(hspec: &HamiltonianSpec, c2: f64, c3: f64) -> Result<()> {
    let k2 = hspec.space.kappa2;
    let [b1, b2, b3] = hspec.space.b;
    if k2 > 0.0 && b1 >= 0.0 && b2 >= 0.0 && b3 >= 0.0 {
        let slack = 1e-12 * c3.abs().max(1.0);
        let c2_min = k2 * (b2.sqrt() + b3.sqrt()).powi(2);
        if c2 < c2_min - slack {
            return Err(Error::domain(format!("C⁽²⁾={c2} below its minimum {c2_min}")));
        }
        let c3_min = k2 * (b1.sqrt() + c2.max(0.0).sqrt()).powi(2);
        if c3 < c3_min - slack {
            return Err(Error::domain(format!("C⁽³⁾={c3} below its minimum {c3_min}")));
        }
    }
    Ok(())
}

pub fn radial_reduce(hspec: &HamiltonianSpec, c2: f64, c3: f64, energy: f64) -> Result<RadialProblem> {
    let range = scan_range(hspec);
    radial_reduce_on(hspec, c2, c3, energy, range)
}

/// [`radial_reduce`] over an explicit interval `(r_lo, r_hi)`.
pub fn radial_reduce_on(
    hspec: &HamiltonianSpec,
    c2: f64,
    c3: f64,
    energy: f64,
    range: (f64, f64),
) -> Result<RadialProblem> {
    check_consistency(hspec, c2, c3)?;
    let mut prob = RadialProblem { energy, c3, hspec: hspec.clone(), turning_points: Vec::new(), range };
    let (lo, hi) = range;
    let ratio = (hi / lo).ln() / (GRID_POINTS - 1) as f64;
    let gap = |r: f64| prob.effective_potential(r).map(|v| v - energy).unwrap_or(f64::INFINITY);
    let mut admissible = false;
    let mut roots = Vec::new();
    let mut prev_r = lo;
    let mut prev = gap(lo);
    admissible |= prev <= 0.0;
    for i in 1..GRID_POINTS {
        let r = lo * (ratio * i as f64).exp();
        let cur = gap(r);
        admissible |= cur <= 0.0;
        if (prev <= 0.0) != (cur <= 0.0) {
            roots.push(bisect(&gap, prev_r, r, prev <= 0.0));
        }
        prev_r = r;
        prev = cur;
    }
    if !admissible {
        return Err(Error::NoBoundRegion { energy });
    }
    prob.turning_points = roots;
    Ok(prob)
}

fn bisect(gap: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, a_inside: bool) -> f64 {
    while b - a > 1e-12 * a.abs().max(1.0) {
        let m = 0.5 * (a + b);
        if (gap(m) <= 0.0) == a_inside {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::RadialPotential;
    use crate::profile::ConformalProfile;
    use crate::space::SpaceSpec;

    #[test]
    fn no_bound_region_below_minimum() {
        let space = SpaceSpec::free(1.0, ConformalProfile::constant_curvature()).unwrap();
        let hs = HamiltonianSpec::new(space, Some(RadialPotential::KeplerCoulomb { alpha: 1.0 }));
        assert!(matches!(radial_reduce(&hs, 0.5, 1.0, -100.0), Err(Error::NoBoundRegion { .. })));
    }
}
