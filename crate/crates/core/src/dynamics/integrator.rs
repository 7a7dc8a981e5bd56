//! Dormand–Prince 5(4) with PI step control and singularity guards.

use crate::error::{Error, Result};
use crate::ktrig::{kcos, ksin};
use crate::potentials::{green_value, RadialPotential};
use crate::space::{PhasePoint, PhasePointSpherical};

use super::{flow_derivatives, integrals_of_motion, spherical_state, staeckel_at, HamiltonianSpec};

// Autonomous systems only, so the nodes c_i never enter.
const A2: [f64; 1] = [1.0 / 5.0];
const A3: [f64; 2] = [3.0 / 40.0, 9.0 / 40.0];
const A4: [f64; 3] = [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0];
const A5: [f64; 4] = [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0];
const A6: [f64; 5] = [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0];
const B5: [f64; 6] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0];
const B4: [f64; 7] =
    [5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0];

const SAFETY: f64 = 0.9;
const PI_ALPHA: f64 = 0.14;
const PI_BETA: f64 = 0.08;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;
const UNDERFLOW: f64 = 1e-14;
const DRIFT_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct IntegrationOptions {
    pub tol: f64,
    /// Distance from a coordinate singularity at which integration halts.
    pub singularity_margin: f64,
    pub max_steps: usize,
    pub initial_step: Option<f64>,
    /// Record only at these times (plus the initial one).
    pub output_times: Option<Vec<f64>>,
}

impl Default for IntegrationOptions {
    fn default() -> Self {
        IntegrationOptions {
            tol: 1e-10,
            singularity_margin: 1e-6,
            max_steps: 1_000_000,
            initial_step: None,
            output_times: None,
        }
    }
}

impl IntegrationOptions {
    pub fn with_tol(tol: f64) -> Self {
        IntegrationOptions { tol, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Largest `max|y₅ − y₄|` over accepted steps.
    pub max_error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSample {
    pub h: f64,
    pub c2: f64,
    pub c2_lower: f64,
    pub c3: f64,
    pub staeckel: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    Completed,
    SingularityApproach { locus: String },
    StepUnderflow,
    StepLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhasePointSpherical>,
    pub invariants_log: Vec<InvariantSample>,
    pub step_stats: StepStats,
    pub termination: Termination,
}

impl Trajectory {
    pub fn t_reached(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    /// Largest `|Iₜ − I₀|/|I₀|` per invariant (absolute when `I₀ ≈ 0`), ordered
    /// `(H, C⁽²⁾, C₍₂₎, C⁽³⁾, ℐ)`; `ℐ` is `None` when not logged.
    pub fn drift(&self) -> [Option<f64>; 5] {
        let Some(first) = self.invariants_log.first() else {
            return [None; 5];
        };
        let rel = |f: &dyn Fn(&InvariantSample) -> Option<f64>| -> Option<f64> {
            let i0 = f(first)?;
            let scale = if i0.abs() > DRIFT_FLOOR { i0.abs() } else { 1.0 };
            self.invariants_log
                .iter()
                .map(|s| f(s).map(|v| (v - i0).abs() / scale))
                .try_fold(0.0_f64, |m, d| d.map(|d| m.max(d)))
        };
        [
            rel(&|s| Some(s.h)),
            rel(&|s| Some(s.c2)),
            rel(&|s| Some(s.c2_lower)),
            rel(&|s| Some(s.c3)),
            rel(&|s| s.staeckel),
        ]
    }

    pub fn max_drift(&self) -> f64 {
        self.drift().iter().flatten().fold(0.0, |m, &d| m.max(d))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IntegrationError {
    #[error("integration halted near {locus} at t={}", trajectory.t_reached())]
    SingularityApproach { trajectory: Box<Trajectory>, locus: String },
    #[error("step size underflow at t={t}")]
    StepUnderflow { trajectory: Box<Trajectory>, t: f64 },
    #[error(transparent)]
    Domain(#[from] Error),
}

impl IntegrationError {
    /// The partial trajectory, if one was produced.
    pub fn trajectory(&self) -> Option<&Trajectory> {
        match self {
            IntegrationError::SingularityApproach { trajectory, .. }
            | IntegrationError::StepUnderflow { trajectory, .. } => Some(trajectory),
            IntegrationError::Domain(_) => None,
        }
    }
}

pub(crate) enum Stop {
    Finished,
    Singular(String),
    Underflow(f64),
    StepLimit,
    Failed(Error),
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, coeffs: &[f64], ks: &[[f64; N]]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in coeffs.iter().zip(ks) {
        if *c != 0.0 {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
    }
    out
}

/// Generic DP5(4) driver for autonomous systems. `record` is called for each
/// accepted (or output) state; `guard` names a locus the state is too close to.
pub(crate) fn run<const N: usize, F, G, R>(
    rhs: F,
    y0: [f64; N],
    t_end: f64,
    opts: &IntegrationOptions,
    guard: G,
    mut record: R,
) -> (StepStats, Stop)
where
    F: Fn(&[f64; N]) -> Result<[f64; N]>,
    G: Fn(&[f64; N]) -> Option<String>,
    R: FnMut(f64, &[f64; N]) -> Result<()>,
{
    let mut stats = StepStats::default();
    let tol = opts.tol;
    let mut outputs: Vec<f64> = opts
        .output_times
        .as_ref()
        .map(|v| v.iter().copied().filter(|&t| t > 0.0 && t < t_end).collect())
        .unwrap_or_default();
    outputs.sort_by(f64::total_cmp);
    outputs.dedup();
    outputs.push(t_end);
    let dense = opts.output_times.is_none();
    let mut next_out = 0;

    let mut y = y0;
    let mut k1 = match rhs(&y) {
        Ok(k) => k,
        Err(e) => return (stats, Stop::Failed(e)),
    };
    let mut t = 0.0;
    let mut h = opts.initial_step.unwrap_or_else(|| {
        let yn = y.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let fnorm = k1.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        (0.01 * (1.0 + yn) / (fnorm + 1e-12)).min(0.1 * t_end)
    });
    let mut err_prev: f64 = 1e-4;

    while next_out < outputs.len() {
        if stats.accepted + stats.rejected >= opts.max_steps {
            return (stats, Stop::StepLimit);
        }
        let target = outputs[next_out];
        let mut clipped = false;
        if t + h >= target {
            h = target - t;
            clipped = true;
        }
        if h < UNDERFLOW * t_end {
            return (stats, Stop::Underflow(t));
        }
        let stages = (|| -> Result<([f64; N], [f64; N], [f64; N])> {
            let mut ks = [[0.0; N]; 7];
            ks[0] = k1;
            ks[1] = rhs(&axpy(&y, h, &A2, &ks[..1]))?;
            ks[2] = rhs(&axpy(&y, h, &A3, &ks[..2]))?;
            ks[3] = rhs(&axpy(&y, h, &A4, &ks[..3]))?;
            ks[4] = rhs(&axpy(&y, h, &A5, &ks[..4]))?;
            ks[5] = rhs(&axpy(&y, h, &A6, &ks[..5]))?;
            let y5 = axpy(&y, h, &B5, &ks[..6]);
            ks[6] = rhs(&y5)?;
            let y4 = axpy(&y, h, &B4, &ks[..7]);
            Ok((y5, y4, ks[6]))
        })();
        let (y5, y4, k7) = match stages {
            Ok(v) => v,
            Err(_) => {
                stats.rejected += 1;
                h *= 0.25;
                continue;
            }
        };
        let mut err = 0.0_f64;
        let mut raw = 0.0_f64;
        for i in 0..N {
            let e = (y5[i] - y4[i]).abs();
            raw = raw.max(e);
            err = err.max(e / (tol * (1.0 + y[i].abs().max(y5[i].abs()))));
        }
        if !err.is_finite() {
            stats.rejected += 1;
            h *= 0.25;
            continue;
        }
        if err <= 1.0 {
            stats.accepted += 1;
            stats.max_error_estimate = stats.max_error_estimate.max(raw);
            t = if clipped { target } else { t + h };
            y = y5;
            k1 = k7;
            let landed = clipped;
            if landed {
                next_out += 1;
            }
            if dense || landed {
                if let Err(e) = record(t, &y) {
                    return (stats, Stop::Failed(e));
                }
            }
            if let Some(locus) = guard(&y) {
                if !(dense || landed) {
                    if let Err(e) = record(t, &y) {
                        return (stats, Stop::Failed(e));
                    }
                }
                return (stats, Stop::Singular(locus));
            }
            let e = err.max(1e-10);
            let factor = (SAFETY * e.powf(-PI_ALPHA) * err_prev.powf(PI_BETA)).clamp(MIN_FACTOR, MAX_FACTOR);
            err_prev = e;
            if !clipped {
                h *= factor;
            } else {
                h = h.max(1e-3 * t_end.min(1.0)) * factor;
            }
        } else {
            stats.rejected += 1;
            h *= (SAFETY * err.powf(-0.2)).clamp(MIN_FACTOR, 1.0);
        }
    }
    (stats, Stop::Finished)
}

/// Nearest coordinate singularity within `margin`, if any.
pub(crate) fn singular_locus(s: &PhasePointSpherical, hspec: &HamiltonianSpec, margin: f64) -> Option<String> {
    let space = &hspec.space;
    let [b1, b2, b3] = space.b;
    let k2 = space.kappa2;
    if s.r < margin {
        return Some("r = 0".into());
    }
    if let Some(edge) = space.patch_radius() {
        if edge - s.r < margin {
            return Some("the patch boundary r = π/2λ₁".into());
        }
    }
    if ksin(k2, s.theta).abs() < margin {
        return Some("sin λ₂θ = 0".into());
    }
    if b1 != 0.0 && k2 > 0.0 && kcos(k2, s.theta).abs() < margin {
        return Some("cos λ₂θ = 0".into());
    }
    if b2 != 0.0 && s.phi.cos().abs() < margin {
        return Some("cos φ = 0".into());
    }
    if b3 != 0.0 && s.phi.sin().abs() < margin {
        return Some("sin φ = 0".into());
    }
    if let Some(RadialPotential::Oscillator { .. }) = hspec.potential {
        if let Ok(u) = green_value(s.r, &space.profile, space.z) {
            if u.abs() < margin {
                return Some("a zero of the Green function".into());
            }
        }
    }
    None
}

fn sample(s: &PhasePointSpherical, hspec: &HamiltonianSpec, log_staeckel: bool) -> Result<InvariantSample> {
    let ints = integrals_of_motion(s, hspec)?;
    let staeckel = if log_staeckel { staeckel_at(s, &hspec.space).ok() } else { None };
    Ok(InvariantSample { h: ints.h, c2: ints.c2, c2_lower: ints.c2_lower, c3: ints.c3, staeckel })
}

/// Integrate Hamilton's equations from `initial` over `[0, t_end]`.
pub fn integrate(
    initial: &PhasePoint,
    hspec: &HamiltonianSpec,
    t_end: f64,
    tol: f64,
) -> std::result::Result<Trajectory, IntegrationError> {
    integrate_with(initial, hspec, t_end, &IntegrationOptions::with_tol(tol))
}

pub fn integrate_with(
    initial: &PhasePoint,
    hspec: &HamiltonianSpec,
    t_end: f64,
    opts: &IntegrationOptions,
) -> std::result::Result<Trajectory, IntegrationError> {
    if !(1e-13..=1e-3).contains(&opts.tol) {
        return Err(Error::domain(format!("tolerance {} outside [1e-13, 1e-3]", opts.tol)).into());
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::domain(format!("t_end={t_end} must be positive")).into());
    }
    let s0 = spherical_state(initial, &hspec.space)?;
    let margin = opts.singularity_margin;
    if let Some(locus) = singular_locus(&s0, hspec, margin) {
        return Err(Error::domain(format!("initial state lies within {margin} of {locus}")).into());
    }
    let log_staeckel = hspec.space.kappa2 > 0.0 && !hspec.space.has_b();
    let mut traj = Trajectory {
        times: vec![0.0],
        states: vec![s0],
        invariants_log: vec![sample(&s0, hspec, log_staeckel)?],
        step_stats: StepStats::default(),
        termination: Termination::Completed,
    };
    let (stats, stop) = run(
        |y: &[f64; 6]| flow_derivatives(&PhasePointSpherical::from_array(y), hspec),
        s0.to_array(),
        t_end,
        opts,
        |y| singular_locus(&PhasePointSpherical::from_array(y), hspec, margin),
        |t, y| {
            let s = PhasePointSpherical::from_array(y);
            traj.invariants_log.push(sample(&s, hspec, log_staeckel)?);
            traj.times.push(t);
            traj.states.push(s);
            Ok(())
        },
    );
    traj.step_stats = stats;
    match stop {
        Stop::Finished => Ok(traj),
        Stop::StepLimit => {
            traj.termination = Termination::StepLimit;
            Ok(traj)
        }
        Stop::Singular(locus) => {
            traj.termination = Termination::SingularityApproach { locus: locus.clone() };
            Err(IntegrationError::SingularityApproach { trajectory: Box::new(traj), locus })
        }
        Stop::Underflow(t) => {
            traj.termination = Termination::StepUnderflow;
            Err(IntegrationError::StepUnderflow { trajectory: Box::new(traj), t })
        }
        Stop::Failed(e) => Err(e.into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let opts = IntegrationOptions::with_tol(1e-11);
        let mut last = [0.0; 2];
        let (stats, stop) = run(
            |y: &[f64; 2]| Ok([y[1], -y[0]]),
            [1.0, 0.0],
            std::f64::consts::TAU,
            &opts,
            |_| None,
            |_, y| {
                last = *y;
                Ok(())
            },
        );
        assert!(matches!(stop, Stop::Finished));
        assert!(stats.accepted > 10);
        assert!((last[0] - 1.0).abs() < 1e-9 && last[1].abs() < 1e-9);
    }

    #[test]
    fn output_times_are_hit() {
        let opts =
            IntegrationOptions { output_times: Some(vec![0.5, 1.0, 1.5]), ..IntegrationOptions::with_tol(1e-10) };
        let mut times = Vec::new();
        let mut vals = Vec::new();
        run(
            |y: &[f64; 1]| Ok([y[0]]),
            [1.0],
            2.0,
            &opts,
            |_| None,
            |t, y| {
                times.push(t);
                vals.push(y[0]);
                Ok(())
            },
        );
        assert_eq!(times, vec![0.5, 1.0, 1.5, 2.0]);
        for (t, v) in times.iter().zip(&vals) {
            assert!((v - t.exp()).abs() < 1e-8 * t.exp());
        }
    }
}
