//! The four run types. Each returns a complete [`ResultRecord`]; per-point
//! domain errors become row flags.

use supint::audit::{run_audit as audit_suite, AuditSettings};
use supint::dynamics::{
    integrate_with, HamiltonianSpec, IntegrationError, IntegrationOptions, Termination, Trajectory,
};
use supint::geometry::{curvature_cartesian, curvature_spherical, to_cartesian, CurvatureReport};
use supint::ktrig::{kcos, ksin, ktan};
use supint::parallel::map;
use supint::potentials::{
    green_closed_form, green_quadrature, GreenFunction, IntrinsicPotential, RadialPotential, OSCILLATOR_POLE_GUARD,
};
use supint::{ExecMode, PhasePoint, PhasePointCartesian, PhasePointSpherical, SpaceSpec};

use crate::config::{
    Coordinates, CurvatureGridRun, ExperimentConfig, GeodesicRun, InitialState, PotentialScanRun, RunConfig,
};
use crate::error::CliError;
use crate::record::{Cell, Property, ResultRecord, Summary};

pub fn execute(config: &ExperimentConfig) -> Result<ResultRecord, CliError> {
    let space = config.validate()?;
    match &config.run {
        RunConfig::CurvatureGrid(run) => Ok(run_curvature_grid(config, run, &space)),
        RunConfig::Geodesic(run) => run_geodesic(config, run, space),
        RunConfig::Audit(_) => Ok(run_audit(config, &space)),
        RunConfig::PotentialScan(run) => Ok(run_potential_scan(config, run, &space)),
    }
}

fn worst(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    values.into_iter().fold(None, |m, v| Some(m.map_or(v, |m: f64| if v.is_nan() { v } else { m.max(v) })))
}

fn curvature_scale(k: &CurvatureReport) -> f64 {
    k.scalar.abs().max(2.0 * k.sectional.iter().map(|v| v.abs()).sum::<f64>()).max(1e-12)
}

/// Explicit scalar curvature where one exists (unit `κ₂` only).
fn scalar_closed_form_spherical(space: &SpaceSpec, r: f64) -> Option<f64> {
    if space.kappa2 != 1.0 {
        return None;
    }
    let z = space.z;
    let (s, c, t) = (ksin(z, r), kcos(z, r), ktan(z, r));
    match space.profile.exponent()? {
        1.0 => Some(6.0 * z),
        0.0 => Some(-2.5 * z * z * s * t),
        -3.0 => Some(-z * c * c * (16.0 + 2.0 * c * c)),
        _ => None,
    }
}

fn scalar_closed_form_cartesian(space: &SpaceSpec, q: &[f64; 3]) -> Option<f64> {
    if space.kappa2 != 1.0 {
        return None;
    }
    let z = space.z;
    let q2: f64 = q.iter().map(|v| v * v).sum();
    match space.profile.exponent()? {
        1.0 => Some(6.0 * z),
        0.0 => Some(-5.0 * z * (z * q2).sinh()),
        _ => None,
    }
}

struct CurvaturePoint {
    coords: Vec<f64>,
    report: Option<CurvatureReport>,
    closed: Option<f64>,
}

pub fn run_curvature_grid(config: &ExperimentConfig, run: &CurvatureGridRun, space: &SpaceSpec) -> ResultRecord {
    let space = space.clone().with_b([0.0; 3]);
    let axes = |names: &[&Option<crate::config::Axis>]| -> Vec<Vec<f64>> {
        names.iter().map(|a| a.as_ref().map(|a| a.values()).unwrap_or_default()).collect()
    };
    let (coord_names, points): (&[&str], Vec<Vec<f64>>) = match run.coordinates {
        Coordinates::Spherical => {
            let ax = axes(&[&run.r, &run.theta]);
            (&["r", "theta"], ax[0].iter().flat_map(|&r| ax[1].iter().map(move |&t| vec![r, t])).collect())
        }
        Coordinates::Cartesian => {
            let ax = axes(&[&run.q1, &run.q2, &run.q3]);
            let mut pts = Vec::new();
            for &a in &ax[0] {
                for &b in &ax[1] {
                    for &c in &ax[2] {
                        pts.push(vec![a, b, c]);
                    }
                }
            }
            (&["q1", "q2", "q3"], pts)
        }
    };
    let results: Vec<CurvaturePoint> = map(&points, ExecMode::available(), |x| match run.coordinates {
        Coordinates::Spherical => CurvaturePoint {
            coords: x.clone(),
            report: curvature_spherical(x[0], x[1], &space).ok(),
            closed: scalar_closed_form_spherical(&space, x[0]),
        },
        Coordinates::Cartesian => {
            let q = [x[0], x[1], x[2]];
            CurvaturePoint {
                coords: x.clone(),
                report: curvature_cartesian(&q, &space).ok(),
                closed: scalar_closed_form_cartesian(&space, &q),
            }
        }
    });

    let mut columns: Vec<&str> = coord_names.to_vec();
    columns.extend(["K12", "K13", "K23", "K", "identity_residual", "K_closed_form", "status"]);
    let mut rows = Vec::with_capacity(results.len());
    let mut identity = Vec::new();
    let mut closed_gap = Vec::new();
    let mut failures = 0usize;
    for p in &results {
        let mut row: Vec<Cell> = p.coords.iter().map(|&v| v.into()).collect();
        match &p.report {
            Some(k) => {
                row.extend(k.sectional.iter().map(|&v| Cell::from(v)));
                row.push(k.scalar.into());
                row.push(k.identity_residual().into());
                identity.push(k.identity_residual().abs() / curvature_scale(k));
                if let Some(c) = p.closed {
                    closed_gap.push((k.scalar - c).abs() / c.abs().max(1e-12));
                }
                row.push(p.closed.into());
                row.push("ok".into());
            }
            None => {
                failures += 1;
                row.extend((0..6).map(|_| Cell::Num(None)));
                row.push("domain-error".into());
            }
        }
        rows.push(row);
    }
    let t = &config.tolerances;
    let mut props = vec![Property::at_most(
        "scalar-sectional-identity",
        worst(identity.iter().copied()),
        t.identity,
        identity.len(),
        failures,
    )];
    if !closed_gap.is_empty() {
        props.push(Property::at_most(
            "closed-form-scalar",
            worst(closed_gap.iter().copied()),
            t.closed_form,
            closed_gap.len(),
            failures,
        ));
    }
    let summary = Summary::new(props).metric("points", results.len()).metric("domain_errors", failures);
    ResultRecord::new(config, &columns, rows, summary)
}

fn termination_label(t: &Termination) -> String {
    match t {
        Termination::Completed => "completed".into(),
        Termination::SingularityApproach { locus } => format!("singularity-approach: {locus}"),
        Termination::StepUnderflow => "step-underflow".into(),
        Termination::StepLimit => "step-limit".into(),
    }
}

pub fn run_geodesic(config: &ExperimentConfig, run: &GeodesicRun, space: SpaceSpec) -> Result<ResultRecord, CliError> {
    if run.staeckel_check && (space.kappa2 <= 0.0 || space.has_b()) {
        return Err(CliError::Config("the ℐ check needs kappa2 > 0 and b = 0".into()));
    }
    let hspec = HamiltonianSpec::new(space.clone(), run.potential.build());
    let initial: PhasePoint = match run.initial {
        InitialState::Spherical { r, theta, phi, p_r, p_theta, p_phi } => {
            PhasePointSpherical::new([r, theta, phi], [p_r, p_theta, p_phi]).into()
        }
        InitialState::Cartesian { q, p } => PhasePointCartesian::new(q, p).into(),
    };
    let n = run.samples;
    let times: Vec<f64> = (1..n).map(|i| run.t_end * i as f64 / (n - 1) as f64).collect();
    let opts = IntegrationOptions { output_times: Some(times), ..IntegrationOptions::with_tol(run.tol) };
    let traj: Trajectory = match integrate_with(&initial, &hspec, run.t_end, &opts) {
        Ok(t) => t,
        Err(IntegrationError::Domain(e)) => return Err(CliError::Config(format!("inadmissible initial state: {e}"))),
        Err(e) => e.trajectory().cloned().expect("halted runs carry their trajectory"),
    };

    let columns = [
        "t", "r", "theta", "phi", "p_r", "p_theta", "p_phi", "q1", "q2", "q3", "H", "C2", "C2_lower", "C3", "staeckel",
    ];
    let mut rows = Vec::with_capacity(traj.times.len());
    for ((&t, s), inv) in traj.times.iter().zip(&traj.states).zip(&traj.invariants_log) {
        let q = if space.kappa2 > 0.0 { to_cartesian(s, &space).ok().map(|c| c.q) } else { None };
        let mut row: Vec<Cell> = vec![t.into()];
        row.extend(s.to_array().iter().map(|&v| Cell::from(v)));
        row.extend((0..3).map(|i| Cell::from(q.map(|q| q[i]))));
        row.extend([inv.h, inv.c2, inv.c2_lower, inv.c3].map(Cell::from));
        row.push(inv.staeckel.into());
        rows.push(row);
    }

    let drift = traj.drift();
    let count = traj.invariants_log.len();
    let budget = config.tolerances.drift;
    let mut props: Vec<Property> = ["drift/hamiltonian", "drift/c2", "drift/c2-lower", "drift/c3"]
        .iter()
        .zip(drift)
        .map(|(name, d)| Property::at_most(name, d, budget, count, 0))
        .collect();
    if run.staeckel_check {
        props.push(Property::at_most("staeckel-conserved", drift[4], config.tolerances.staeckel, count, 0));
    }
    let truncated = traj.termination != Termination::Completed;
    let summary = Summary::new(props)
        .metric("t_end", run.t_end)
        .metric("t_reached", traj.t_reached())
        .metric("truncated", truncated)
        .metric("termination", termination_label(&traj.termination))
        .metric("accepted_steps", traj.step_stats.accepted)
        .metric("rejected_steps", traj.step_stats.rejected)
        .metric("drift_staeckel", drift[4]);
    Ok(ResultRecord::new(config, &columns, rows, summary))
}

pub fn run_audit(config: &ExperimentConfig, space: &SpaceSpec) -> ResultRecord {
    let RunConfig::Audit(run) = &config.run else { unreachable!("audit config") };
    let settings = AuditSettings {
        seed: config.seed,
        bracket_samples: run.samples.bracket,
        involution_samples: run.samples.involution,
        rank_samples: run.samples.rank,
        oracle_samples: run.samples.oracle,
        chart_samples: run.samples.chart,
        potentials: run.potentials.iter().map(|p| p.build()).collect(),
        staeckel_check: run.staeckel_check,
        tolerances: config.tolerances.audit(),
        mode: ExecMode::available(),
    };
    let report = audit_suite(space, &settings);
    let columns = ["property", "statistic", "threshold", "passed", "evaluated", "skipped"];
    let rows = report
        .properties
        .iter()
        .map(|p| {
            vec![
                p.name.as_str().into(),
                p.statistic.into(),
                p.threshold.into(),
                p.passed.into(),
                (p.evaluated as f64).into(),
                (p.skipped as f64).into(),
            ]
        })
        .collect();
    let props: Vec<Property> = report.properties.iter().map(Property::from).collect();
    let mut summary = Summary::new(props);
    if let Some(p) = report.get("staeckel-conserved") {
        let verdict = if p.passed { "ℐ conserved" } else { "ℐ flagged non-conserved" };
        summary = summary.metric("staeckel", verdict);
    }
    ResultRecord::new(config, &columns, rows, summary)
}

struct ScanPoint {
    r: f64,
    quadrature: Option<f64>,
    closed: Option<f64>,
    kc: Option<f64>,
    osc: Option<f64>,
    residual: Option<f64>,
}

impl ScanPoint {
    fn value(&self) -> Option<f64> {
        self.closed.or(self.quadrature)
    }
}

fn scan_point(r: f64, run: &PotentialScanRun, space: &SpaceSpec) -> ScanPoint {
    let case = space.profile.green_case();
    let kc = IntrinsicPotential::new(RadialPotential::KeplerCoulomb { alpha: run.alpha }, space);
    let osc = IntrinsicPotential::new(RadialPotential::Oscillator { beta: run.beta }, space);
    ScanPoint {
        r,
        quadrature: green_quadrature(r, &space.profile, space.z).ok(),
        closed: case.and_then(|c| green_closed_form(r, c, space.z).ok()),
        kc: kc.value(r).ok(),
        osc: osc.value(r).ok(),
        residual: GreenFunction::new(space.profile.clone(), space.z).flux(r).ok().map(|f| f - 1.0),
    }
}

/// Zero of `U` in `(a, b)` given a sign change, to machine resolution.
fn bisect_zero(run: &PotentialScanRun, space: &SpaceSpec, mut a: f64, mut b: f64) -> Option<f64> {
    let u = |r: f64| scan_point(r, run, space).value();
    let ua = u(a)?;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let um = u(m)?;
        if um == 0.0 {
            return Some(m);
        }
        if (um < 0.0) == (ua < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

pub fn run_potential_scan(config: &ExperimentConfig, run: &PotentialScanRun, space: &SpaceSpec) -> ResultRecord {
    let radii = run.r.values();
    let mut points: Vec<ScanPoint> = map(&radii, ExecMode::available(), |&r| scan_point(r, run, space));
    if run.locate_zeros {
        let mut extra = Vec::new();
        for w in points.windows(2) {
            if let (Some(a), Some(b)) = (w[0].value(), w[1].value()) {
                if a != 0.0 && b != 0.0 && (a < 0.0) != (b < 0.0) {
                    if let Some(r) = bisect_zero(run, space, w[0].r.min(w[1].r), w[0].r.max(w[1].r)) {
                        extra.push(scan_point(r, run, space));
                    }
                }
            }
        }
        points.extend(extra);
        points.sort_by(|a, b| a.r.total_cmp(&b.r));
        if run.r.stop < run.r.start {
            points.reverse();
        }
    }

    let columns =
        ["r", "u_quadrature", "u_closed_form", "kepler_coulomb", "oscillator", "ode_residual", "path_delta", "status"];
    let mut rows = Vec::with_capacity(points.len());
    let (mut deltas, mut residuals) = (Vec::new(), Vec::new());
    let (mut singular, mut domain) = (0usize, 0usize);
    for p in &points {
        let delta = match (p.quadrature, p.closed) {
            (Some(q), Some(c)) => Some((q - c).abs() / c.abs().max(1.0)),
            _ => None,
        };
        let status = if p.value().is_some_and(|u| u.abs() < OSCILLATOR_POLE_GUARD) {
            singular += 1;
            "singular"
        } else if p.quadrature.is_none() || p.kc.is_none() || p.osc.is_none() || p.residual.is_none() {
            domain += 1;
            "domain-error"
        } else {
            "ok"
        };
        if status != "singular" {
            deltas.extend(delta);
            residuals.extend(p.residual.map(f64::abs));
        }
        rows.push(vec![
            p.r.into(),
            p.quadrature.into(),
            p.closed.into(),
            p.kc.into(),
            p.osc.into(),
            p.residual.into(),
            delta.into(),
            status.into(),
        ]);
    }
    let t = &config.tolerances;
    let mut props = vec![Property::at_most(
        "ode-residual",
        worst(residuals.iter().copied()),
        t.ode_residual,
        residuals.len(),
        domain,
    )];
    if space.profile.green_case().is_some() {
        props.push(Property::at_most(
            "path-agreement",
            worst(deltas.iter().copied()),
            t.agreement,
            deltas.len(),
            domain,
        ));
    }
    let summary = Summary::new(props)
        .metric("points", points.len())
        .metric("singular_rows", singular)
        .metric("domain_errors", domain);
    ResultRecord::new(config, &columns, rows, summary)
}
