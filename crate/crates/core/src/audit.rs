//! Randomized property suites over one space: deformed brackets, Casimir
//! centrality, involution, functional independence, curvature oracle,
//! coordinate-map fidelity and the Stäckel integral.

use nalgebra::SMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalgebra::{bracket_residuals, Observable};
use crate::dynamics::{hamiltonian, integrals_of_motion, integrate, HamiltonianSpec, Integrals};
use crate::error::Result;
use crate::fd::{bracket_from_gradients, gradient, norm, poisson_bracket_fourth_order};
use crate::geometry::{
    curvature_cartesian, curvature_oracle_fd, curvature_spherical, line_element_cartesian, metric_spherical,
    to_cartesian, to_spherical, Christoffel, CurvatureReport,
};
use crate::parallel::{map, ExecMode};
use crate::potentials::{green_value, RadialPotential};
use crate::space::{PhaseArray, PhasePointCartesian, PhasePointSpherical, SpaceSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditTolerances {
    pub bracket: f64,
    pub involution: f64,
    pub witness: f64,
    pub rank_ratio: f64,
    pub rank_min_fraction: f64,
    pub oracle: f64,
    pub identity: f64,
    pub round_trip: f64,
    pub invariance: f64,
    pub canonical: f64,
    pub staeckel: f64,
}

impl Default for AuditTolerances {
    fn default() -> Self {
        AuditTolerances {
            bracket: 1e-6,
            involution: 1e-6,
            witness: 1e-3,
            rank_ratio: 1e-8,
            rank_min_fraction: 0.9,
            oracle: 1e-4,
            identity: 1e-8,
            round_trip: 1e-10,
            invariance: 1e-9,
            canonical: 1e-8,
            staeckel: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditSettings {
    pub seed: u64,
    pub bracket_samples: usize,
    pub involution_samples: usize,
    pub rank_samples: usize,
    pub oracle_samples: usize,
    pub chart_samples: usize,
    /// Potentials installed in turn for the involution and rank suites.
    pub potentials: Vec<Option<RadialPotential>>,
    pub staeckel_check: bool,
    pub tolerances: AuditTolerances,
    pub mode: ExecMode,
}

impl Default for AuditSettings {
    fn default() -> Self {
        AuditSettings {
            seed: 0,
            bracket_samples: 200,
            involution_samples: 100,
            rank_samples: 20,
            oracle_samples: 100,
            chart_samples: 50,
            potentials: vec![
                None,
                Some(RadialPotential::KeplerCoulomb { alpha: 1.0 }),
                Some(RadialPotential::Oscillator { beta: 0.5 }),
            ],
            staeckel_check: false,
            tolerances: AuditTolerances::default(),
            mode: ExecMode::available(),
        }
    }
}

/// Outcome of one property. `statistic` is the worst scaled residual,
/// except for the rank and witness suites where it is the passing fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub name: String,
    pub statistic: f64,
    pub threshold: f64,
    pub passed: bool,
    pub evaluated: usize,
    /// Samples that raised a domain error and were not scored.
    pub skipped: usize,
}

impl PropertyOutcome {
    fn at_most(name: impl Into<String>, values: &[Option<f64>], threshold: f64) -> Self {
        let scored: Vec<f64> = values.iter().flatten().copied().collect();
        let worst = scored.iter().fold(0.0_f64, |m, &v| if v.is_nan() { f64::NAN } else { m.max(v) });
        PropertyOutcome {
            name: name.into(),
            statistic: worst,
            threshold,
            passed: !scored.is_empty() && worst <= threshold,
            evaluated: scored.len(),
            skipped: values.len() - scored.len(),
        }
    }

    fn at_least(name: impl Into<String>, fraction: f64, threshold: f64, evaluated: usize, skipped: usize) -> Self {
        PropertyOutcome {
            name: name.into(),
            statistic: fraction,
            threshold,
            passed: fraction >= threshold,
            evaluated,
            skipped,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub properties: Vec<PropertyOutcome>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }

    pub fn get(&self, name: &str) -> Option<&PropertyOutcome> {
        self.properties.iter().find(|p| p.name == name)
    }
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let v = rng.random_range(lo..hi);
    if rng.random_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Cartesian state with every `|qᵢ| ∈ [0.2, 1]` and `pᵢ ∈ [−1, 1]`.
pub fn sample_cartesian(rng: &mut ChaCha8Rng) -> PhasePointCartesian {
    let q = [0; 3].map(|_| signed(rng, 0.2, 1.0));
    let p = [0; 3].map(|_| rng.random_range(-1.0..1.0));
    PhasePointCartesian::new(q, p)
}

/// Radial range used for sampling spherical states.
fn radial_window(space: &SpaceSpec) -> (f64, f64) {
    match space.patch_radius() {
        Some(edge) => {
            let e = edge.min(2.1);
            (0.1 * e, 0.85 * e)
        }
        None => (0.15, 1.8),
    }
}

fn polar_window(space: &SpaceSpec) -> (f64, f64) {
    if space.kappa2 > 0.0 {
        let edge = std::f64::consts::FRAC_PI_2 / space.kappa2.sqrt();
        (0.1 * edge, 0.9 * edge)
    } else {
        (0.15, 1.5)
    }
}

/// Spherical state inside the principal patch, away from every coordinate
/// singularity and from zeros of the Green function.
pub fn sample_spherical(rng: &mut ChaCha8Rng, space: &SpaceSpec) -> PhasePointSpherical {
    let (r_lo, r_hi) = radial_window(space);
    let (t_lo, t_hi) = polar_window(space);
    loop {
        let s = PhasePointSpherical::new(
            [rng.random_range(r_lo..r_hi), rng.random_range(t_lo..t_hi), rng.random_range(0.15..1.42)],
            [0; 3].map(|_| rng.random_range(-1.0..1.0)),
        );
        match green_value(s.r, &space.profile, space.z) {
            Ok(u) if u.abs() > 0.05 => return s,
            _ => continue,
        }
    }
}

/// `|{A,B}| / ((1+|∇A|)(1+|∇B|))`.
fn scaled_bracket(ga: &PhaseArray, gb: &PhaseArray) -> f64 {
    bracket_from_gradients(ga, gb).abs() / ((1.0 + norm(ga)) * (1.0 + norm(gb)))
}

fn integral_gradients(s: &PhasePointSpherical, hspec: &HamiltonianSpec) -> Result<[PhaseArray; 4]> {
    let pick = |f: fn(&Integrals) -> f64| move |x: &PhasePointSpherical| integrals_of_motion(x, hspec).map(|i| f(&i));
    Ok([
        gradient(&pick(|i| i.c2), s)?,
        gradient(&pick(|i| i.c2_lower), s)?,
        gradient(&pick(|i| i.c3), s)?,
        gradient(&pick(|i| i.h), s)?,
    ])
}

/// `σ₄/σ₁` of the 4×6 Jacobian of `(C⁽²⁾, C₍₂₎, C⁽³⁾, H)`.
pub fn independence_ratio(grads: &[PhaseArray; 4]) -> f64 {
    let jac = SMatrix::<f64, 4, 6>::from_fn(|i, k| grads[i][k]);
    let mut sv: Vec<f64> = jac.svd(false, false).singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    if sv[0] == 0.0 {
        0.0
    } else {
        sv[3] / sv[0]
    }
}

fn christoffel_diff(a: &Christoffel, b: &Christoffel) -> (f64, f64) {
    let mut diff: f64 = 0.0;
    let mut size: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                diff = diff.max((a[i][j][k] - b[i][j][k]).abs());
                size = size.max(b[i][j][k].abs());
            }
        }
    }
    (diff, size)
}

/// Normwise relative gap between closed-form and oracle curvature: Γ
/// against its largest component, sectional and scalar curvature against
/// `max(|K|, 2Σ|Kᵢⱼ|)`. Returns the larger of the two.
pub fn oracle_gap(closed: &CurvatureReport, oracle: &CurvatureReport) -> f64 {
    const FLOOR: f64 = 1e-6;
    let (dg, sg) = christoffel_diff(&closed.christoffel, &oracle.christoffel);
    let scale = closed.scalar.abs().max(2.0 * closed.sectional.iter().map(|v| v.abs()).sum::<f64>()).max(FLOOR);
    let ds = (0..3).map(|i| (closed.sectional[i] - oracle.sectional[i]).abs()).fold(0.0, f64::max);
    let dk = (closed.scalar - oracle.scalar).abs();
    (dg / sg.max(FLOOR)).max(ds.max(dk) / scale)
}

fn relative_identity(rep: &CurvatureReport) -> f64 {
    let scale = rep.scalar.abs().max(2.0 * rep.sectional.iter().map(|v| v.abs()).sum::<f64>()).max(1e-12);
    rep.identity_residual().abs() / scale
}

fn bracket_suite(space: &SpaceSpec, rng: &mut ChaCha8Rng, s: &AuditSettings) -> Vec<PropertyOutcome> {
    let site = space.cartesian_partner();
    let states: Vec<PhasePointCartesian> = (0..s.bracket_samples).map(|_| sample_cartesian(rng)).collect();
    let closure = map(&states, s.mode, |x| bracket_residuals(x, &site).ok().map(|r| r.max_scaled()));
    let groups: [(Observable, &[usize]); 3] =
        [(Observable::C2, &[0, 1]), (Observable::C2Lower, &[1, 2]), (Observable::C3, &[0, 1, 2])];
    let centrality = map(&states, s.mode, |x| {
        let mut worst: f64 = 0.0;
        for (cas, sites) in groups {
            let gc = gradient(&|y: &PhasePointCartesian| cas.eval(y, &site, sites), x).ok()?;
            for j in [Observable::JMinus, Observable::JPlus, Observable::JThree] {
                let gj = gradient(&|y: &PhasePointCartesian| j.eval(y, &site, sites), x).ok()?;
                worst = worst.max(scaled_bracket(&gc, &gj));
            }
        }
        Some(worst)
    });
    vec![
        PropertyOutcome::at_most("bracket-closure", &closure, s.tolerances.bracket),
        PropertyOutcome::at_most("casimir-centrality", &centrality, s.tolerances.bracket),
    ]
}

fn potential_label(p: &Option<RadialPotential>) -> &'static str {
    match p {
        None => "free",
        Some(RadialPotential::KeplerCoulomb { .. }) => "kepler-coulomb",
        Some(RadialPotential::Oscillator { .. }) => "oscillator",
    }
}

fn involution_suite(space: &SpaceSpec, rng: &mut ChaCha8Rng, s: &AuditSettings) -> Vec<PropertyOutcome> {
    let n = s.involution_samples.max(s.rank_samples);
    let states: Vec<PhasePointSpherical> = (0..n).map(|_| sample_spherical(rng, space)).collect();
    let mut out = Vec::new();
    for pot in &s.potentials {
        let hspec = HamiltonianSpec::new(space.clone(), *pot);
        let grads = map(&states, s.mode, |x| integral_gradients(x, &hspec).ok());
        let label = potential_label(pot);
        let pairs = [(0, 2), (0, 3), (2, 3), (1, 2), (1, 3)];
        let invol: Vec<Option<f64>> = grads[..s.involution_samples]
            .iter()
            .map(|g| g.map(|g| pairs.iter().map(|&(a, b)| scaled_bracket(&g[a], &g[b])).fold(0.0, f64::max)))
            .collect();
        out.push(PropertyOutcome::at_most(format!("involution/{label}"), &invol, s.tolerances.involution));

        let scored: Vec<f64> =
            grads[..s.involution_samples].iter().flatten().map(|g| scaled_bracket(&g[0], &g[1])).collect();
        let hits = scored.iter().filter(|&&v| v > s.tolerances.witness).count();
        let frac = if scored.is_empty() { 0.0 } else { hits as f64 / scored.len() as f64 };
        out.push(PropertyOutcome::at_least(
            format!("non-involution-witness/{label}"),
            frac,
            0.9,
            scored.len(),
            s.involution_samples - scored.len(),
        ));

        let ratios: Vec<f64> = grads[..s.rank_samples].iter().flatten().map(independence_ratio).collect();
        let full = ratios.iter().filter(|&&r| r > s.tolerances.rank_ratio).count();
        out.push(PropertyOutcome::at_least(
            format!("functional-independence/{label}"),
            full as f64 / s.rank_samples.max(1) as f64,
            s.tolerances.rank_min_fraction,
            ratios.len(),
            s.rank_samples - ratios.len(),
        ));
    }
    out
}

fn curvature_suite(space: &SpaceSpec, rng: &mut ChaCha8Rng, s: &AuditSettings) -> Vec<PropertyOutcome> {
    let flat_b = space.clone().with_b([0.0; 3]);
    let cart: Vec<[f64; 3]> = (0..s.oracle_samples).map(|_| [0; 3].map(|_| signed(rng, 0.1, 0.9))).collect();
    let sph: Vec<[f64; 3]> = (0..s.oracle_samples)
        .map(|_| {
            let st = sample_spherical(rng, &flat_b);
            [st.r, st.theta, st.phi]
        })
        .collect();
    let cart_res = map(&cart, s.mode, |q| {
        let closed = curvature_cartesian(q, &flat_b).ok()?;
        let oracle = curvature_oracle_fd(|x| line_element_cartesian(x, &flat_b), q).ok()?;
        Some((oracle_gap(&closed, &oracle), relative_identity(&closed)))
    });
    let sph_res = map(&sph, s.mode, |x| {
        let closed = curvature_spherical(x[0], x[1], &flat_b).ok()?;
        let oracle = curvature_oracle_fd(|y| metric_spherical(y[0], y[1], &flat_b), x).ok()?;
        Some((oracle_gap(&closed, &oracle), relative_identity(&closed)))
    });
    let first = |v: &[Option<(f64, f64)>]| v.iter().map(|o| o.map(|p| p.0)).collect::<Vec<_>>();
    let second = |v: &[Option<(f64, f64)>]| v.iter().map(|o| o.map(|p| p.1)).collect::<Vec<_>>();
    let mut both_ids = second(&cart_res);
    both_ids.extend(second(&sph_res));
    vec![
        PropertyOutcome::at_most("oracle-equivalence/cartesian", &first(&cart_res), s.tolerances.oracle),
        PropertyOutcome::at_most("oracle-equivalence/spherical", &first(&sph_res), s.tolerances.oracle),
        PropertyOutcome::at_most("scalar-sectional-identity", &both_ids, s.tolerances.identity),
    ]
}

/// Round trip, Hamiltonian invariance and canonical brackets of the
/// coordinate map, as the worst of each at one spherical state.
pub fn chart_fidelity(st: &PhasePointSpherical, hspec: &HamiltonianSpec) -> Result<[f64; 3]> {
    let space = &hspec.space;
    let cart = to_cartesian(st, space)?;
    let back = to_spherical(&cart, space)?;
    let (a, b) = (st.to_array(), back.to_array());
    let round = (0..6).map(|i| (a[i] - b[i]).abs() / a[i].abs().max(1.0)).fold(0.0, f64::max);

    let hs = hamiltonian(&(*st).into(), hspec)?;
    let hc = hamiltonian(&cart.into(), hspec)?;
    let invariance = (hs - hc).abs() / hs.abs().max(1e-300);

    let comp = |k: usize| move |x: &PhasePointCartesian| to_spherical(x, space).map(|s| s.to_array()[k]);
    let mut canon: f64 = 0.0;
    for i in 0..6 {
        for j in (i + 1)..6 {
            let want = if j == i + 3 { 1.0 } else { 0.0 };
            canon = canon.max((poisson_bracket_fourth_order(comp(i), comp(j), &cart)? - want).abs());
        }
    }
    Ok([round, invariance, canon])
}

fn chart_suite(space: &SpaceSpec, rng: &mut ChaCha8Rng, s: &AuditSettings) -> Vec<PropertyOutcome> {
    if space.kappa2 <= 0.0 {
        return Vec::new();
    }
    let hspec = HamiltonianSpec::new(space.clone(), s.potentials.iter().flatten().next().copied());
    let states: Vec<PhasePointSpherical> = (0..s.chart_samples).map(|_| sample_spherical(rng, space)).collect();
    let res = map(&states, s.mode, |x| chart_fidelity(x, &hspec).ok());
    let col = |k: usize| res.iter().map(|r| r.map(|v| v[k])).collect::<Vec<_>>();
    vec![
        PropertyOutcome::at_most("chart-round-trip", &col(0), s.tolerances.round_trip),
        PropertyOutcome::at_most("chart-hamiltonian-invariance", &col(1), s.tolerances.invariance),
        PropertyOutcome::at_most("chart-canonical-brackets", &col(2), s.tolerances.canonical),
    ]
}

/// Relative drift of `ℐ` along a slow geodesic of the given profile (b = 0)
/// over unit-ten time.
pub fn staeckel_drift(space: &SpaceSpec) -> Result<f64> {
    let space = space.clone().with_b([0.0; 3]);
    let (r_lo, r_hi) = radial_window(&space);
    let r0 = 0.8_f64.clamp(r_lo, r_hi);
    let s0 = PhasePointSpherical::new([r0, 0.7, 0.6], [0.02, 0.05, 0.04]);
    let traj = match integrate(&s0.into(), &HamiltonianSpec::geodesic(space), 10.0, 1e-10) {
        Ok(t) => t,
        Err(e) => match e.trajectory() {
            Some(t) => t.clone(),
            None => return Err(crate::error::Error::Numerical(e.to_string())),
        },
    };
    traj.drift()[4].ok_or_else(|| crate::error::Error::Numerical("ℐ could not be logged".into()))
}

fn staeckel_suite(space: &SpaceSpec, s: &AuditSettings) -> Vec<PropertyOutcome> {
    if !s.staeckel_check || space.kappa2 <= 0.0 {
        return Vec::new();
    }
    let drift = staeckel_drift(space).ok();
    vec![PropertyOutcome::at_most("staeckel-conserved", &[drift], s.tolerances.staeckel)]
}

/// Run every suite on `space`. Sampling is sequential from `settings.seed`,
/// so the report is independent of `settings.mode`.
pub fn run_audit(space: &SpaceSpec, settings: &AuditSettings) -> AuditReport {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut properties = bracket_suite(space, &mut rng, settings);
    properties.extend(involution_suite(space, &mut rng, settings));
    properties.extend(curvature_suite(space, &mut rng, settings));
    properties.extend(chart_suite(space, &mut rng, settings));
    properties.extend(staeckel_suite(space, settings));
    AuditReport { properties }
}
