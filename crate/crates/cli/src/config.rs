//! Experiment configuration. TOML on disk; the JSON `config_echo` of a
//! result record parses with the same schema.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use supint::audit::AuditTolerances;
use supint::potentials::RadialPotential;
use supint::{ConformalProfile, Sign, SpaceSpec};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub space: SpaceConfig,
    pub run: RunConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// Where results go. Not echoed: it does not affect the numbers.
    #[serde(default, skip_serializing)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub z: f64,
    #[serde(default = "one")]
    pub kappa2: f64,
    pub profile: ProfileConfig,
    #[serde(default)]
    pub b: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ProfileConfig {
    Identity,
    ConstantCurvature,
    Exponential {
        #[serde(default = "plus")]
        sign: SignConfig,
    },
    PowerCosine {
        k: f64,
    },
    CosCubed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignConfig {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PotentialConfig {
    Free,
    KeplerCoulomb { alpha: f64 },
    Oscillator { beta: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RunConfig {
    CurvatureGrid(CurvatureGridRun),
    Geodesic(GeodesicRun),
    Audit(AuditRun),
    PotentialScan(PotentialScanRun),
}

/// `count` equally spaced values from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Axis {
    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => vec![],
            1 => vec![self.start],
            n => (0..n).map(|i| self.start + (self.stop - self.start) * i as f64 / (n - 1) as f64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinates {
    #[default]
    Spherical,
    Cartesian,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureGridRun {
    #[serde(default)]
    pub coordinates: Coordinates,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q1: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q2: Option<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q3: Option<Axis>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "coordinates", rename_all = "lowercase", deny_unknown_fields)]
pub enum InitialState {
    Spherical { r: f64, theta: f64, phi: f64, p_r: f64, p_theta: f64, p_phi: f64 },
    Cartesian { q: [f64; 3], p: [f64; 3] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicRun {
    pub initial: InitialState,
    #[serde(default = "free")]
    pub potential: PotentialConfig,
    pub t_end: f64,
    #[serde(default = "default_integrator_tol")]
    pub tol: f64,
    /// Number of equally spaced output times on `[0, t_end]`.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub staeckel_check: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditSamples {
    pub bracket: usize,
    pub involution: usize,
    pub rank: usize,
    pub oracle: usize,
    pub chart: usize,
}

impl Default for AuditSamples {
    fn default() -> Self {
        AuditSamples { bracket: 200, involution: 100, rank: 20, oracle: 100, chart: 50 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditRun {
    #[serde(default)]
    pub samples: AuditSamples,
    #[serde(default = "default_audit_potentials")]
    pub potentials: Vec<PotentialConfig>,
    #[serde(default)]
    pub staeckel_check: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialScanRun {
    pub r: Axis,
    #[serde(default = "one")]
    pub alpha: f64,
    #[serde(default = "one")]
    pub beta: f64,
    /// Insert a row at each sign change of `U` found between grid points.
    #[serde(default = "yes")]
    pub locate_zeros: bool,
}

/// Pass/fail thresholds. Every field has a default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub bracket: f64,
    pub involution: f64,
    pub witness: f64,
    pub rank_ratio: f64,
    pub rank_min_fraction: f64,
    pub oracle: f64,
    pub identity: f64,
    pub closed_form: f64,
    pub round_trip: f64,
    pub invariance: f64,
    pub canonical: f64,
    pub staeckel: f64,
    pub drift: f64,
    pub agreement: f64,
    pub ode_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        let a = AuditTolerances::default();
        Tolerances {
            bracket: a.bracket,
            involution: a.involution,
            witness: a.witness,
            rank_ratio: a.rank_ratio,
            rank_min_fraction: a.rank_min_fraction,
            oracle: a.oracle,
            identity: a.identity,
            closed_form: 1e-8,
            round_trip: a.round_trip,
            invariance: a.invariance,
            canonical: a.canonical,
            staeckel: a.staeckel,
            drift: 1e-8,
            agreement: 1e-8,
            ode_residual: 1e-6,
        }
    }
}

impl Tolerances {
    pub fn audit(&self) -> AuditTolerances {
        AuditTolerances {
            bracket: self.bracket,
            involution: self.involution,
            witness: self.witness,
            rank_ratio: self.rank_ratio,
            rank_min_fraction: self.rank_min_fraction,
            oracle: self.oracle,
            identity: self.identity,
            round_trip: self.round_trip,
            invariance: self.invariance,
            canonical: self.canonical,
            staeckel: self.staeckel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

fn plus() -> SignConfig {
    SignConfig::Plus
}

fn free() -> PotentialConfig {
    PotentialConfig::Free
}

fn default_integrator_tol() -> f64 {
    1e-10
}

fn default_samples() -> usize {
    101
}

fn default_audit_potentials() -> Vec<PotentialConfig> {
    vec![
        PotentialConfig::Free,
        PotentialConfig::KeplerCoulomb { alpha: 1.0 },
        PotentialConfig::Oscillator { beta: 0.5 },
    ]
}

impl ProfileConfig {
    pub fn build(&self) -> ConformalProfile {
        match *self {
            ProfileConfig::Identity => ConformalProfile::Identity,
            ProfileConfig::ConstantCurvature => ConformalProfile::constant_curvature(),
            ProfileConfig::Exponential { sign: SignConfig::Plus } => ConformalProfile::Exponential(Sign::Plus),
            ProfileConfig::Exponential { sign: SignConfig::Minus } => ConformalProfile::Exponential(Sign::Minus),
            ProfileConfig::PowerCosine { k } => ConformalProfile::PowerCosine { k },
            ProfileConfig::CosCubed => ConformalProfile::CosCubed,
        }
    }
}

impl PotentialConfig {
    pub fn build(&self) -> Option<RadialPotential> {
        match *self {
            PotentialConfig::Free => None,
            PotentialConfig::KeplerCoulomb { alpha } => Some(RadialPotential::KeplerCoulomb { alpha }),
            PotentialConfig::Oscillator { beta } => Some(RadialPotential::Oscillator { beta }),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let v = match *self {
            PotentialConfig::Free => 0.0,
            PotentialConfig::KeplerCoulomb { alpha } => alpha,
            PotentialConfig::Oscillator { beta } => beta,
        };
        finite("potential coupling", v)
    }
}

impl SpaceConfig {
    pub fn build(&self) -> Result<SpaceSpec, CliError> {
        SpaceSpec::new(self.z, self.kappa2, self.profile.build(), self.b).map_err(|e| CliError::Config(e.to_string()))
    }
}

fn finite(what: &str, v: f64) -> Result<(), CliError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("{what} must be finite, got {v}")))
    }
}

fn check_axis(name: &str, axis: &Axis) -> Result<(), CliError> {
    finite(name, axis.start)?;
    finite(name, axis.stop)?;
    if axis.count == 0 {
        return Err(CliError::Config(format!("grid axis `{name}` is empty")));
    }
    Ok(())
}

fn check_radii(name: &str, axis: &Axis, space: &SpaceSpec) -> Result<(), CliError> {
    check_axis(name, axis)?;
    let (lo, hi) = (axis.start.min(axis.stop), axis.start.max(axis.stop));
    if lo <= 0.0 {
        return Err(CliError::Config(format!("`{name}` must stay above 0")));
    }
    if let Some(edge) = space.patch_radius() {
        if hi >= edge {
            return Err(CliError::Config(format!("`{name}` reaches the patch edge π/(2λ₁) = {edge}")));
        }
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Reads `.json` files as JSON and everything else as TOML.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => Self::from_json(&text),
            _ => Self::from_toml(&text),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.run {
            RunConfig::CurvatureGrid(_) => "curvature-grid",
            RunConfig::Geodesic(_) => "geodesic",
            RunConfig::Audit(_) => "audit",
            RunConfig::PotentialScan(_) => "potential-scan",
        }
    }

    /// `--tol`: the integrator tolerance of a geodesic run, otherwise the
    /// headline threshold of the run.
    pub fn override_tol(&mut self, tol: f64) {
        match &mut self.run {
            RunConfig::Geodesic(g) => g.tol = tol,
            RunConfig::CurvatureGrid(_) => self.tolerances.closed_form = tol,
            RunConfig::PotentialScan(_) => self.tolerances.agreement = tol,
            RunConfig::Audit(_) => {
                self.tolerances.bracket = tol;
                self.tolerances.involution = tol;
            }
        }
    }

    /// Checks every field against the preconditions of the run before any
    /// computation starts.
    pub fn validate(&self) -> Result<SpaceSpec, CliError> {
        let space = self.space.build()?;
        let t = &self.tolerances;
        for (name, v) in [
            ("bracket", t.bracket),
            ("involution", t.involution),
            ("witness", t.witness),
            ("rank_ratio", t.rank_ratio),
            ("oracle", t.oracle),
            ("identity", t.identity),
            ("closed_form", t.closed_form),
            ("round_trip", t.round_trip),
            ("invariance", t.invariance),
            ("canonical", t.canonical),
            ("staeckel", t.staeckel),
            ("drift", t.drift),
            ("agreement", t.agreement),
            ("ode_residual", t.ode_residual),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Config(format!("tolerance `{name}` must be positive, got {v}")));
            }
        }
        if !(0.0..=1.0).contains(&t.rank_min_fraction) {
            return Err(CliError::Config("`rank_min_fraction` must lie in [0, 1]".into()));
        }
        match &self.run {
            RunConfig::CurvatureGrid(g) => match g.coordinates {
                Coordinates::Spherical => {
                    if g.q1.is_some() || g.q2.is_some() || g.q3.is_some() {
                        return Err(CliError::Config("spherical grids take `r` and `theta` only".into()));
                    }
                    let r = g.r.as_ref().ok_or_else(|| CliError::Config("spherical grid needs `r`".into()))?;
                    let th = g.theta.as_ref().ok_or_else(|| CliError::Config("spherical grid needs `theta`".into()))?;
                    check_radii("r", r, &space)?;
                    check_axis("theta", th)?;
                }
                Coordinates::Cartesian => {
                    if g.r.is_some() || g.theta.is_some() {
                        return Err(CliError::Config("Cartesian grids take `q1`, `q2`, `q3` only".into()));
                    }
                    for (name, axis) in [("q1", &g.q1), ("q2", &g.q2), ("q3", &g.q3)] {
                        let axis =
                            axis.as_ref().ok_or_else(|| CliError::Config(format!("Cartesian grid needs `{name}`")))?;
                        check_axis(name, axis)?;
                    }
                }
            },
            RunConfig::Geodesic(g) => {
                g.potential.validate()?;
                if !(g.t_end > 0.0 && g.t_end.is_finite()) {
                    return Err(CliError::Config(format!("`t_end` must be positive, got {}", g.t_end)));
                }
                if !(1e-13..=1e-3).contains(&g.tol) {
                    return Err(CliError::Config(format!("`tol` must lie in [1e-13, 1e-3], got {}", g.tol)));
                }
                if g.samples < 2 {
                    return Err(CliError::Config("`samples` must be at least 2".into()));
                }
                match g.initial {
                    InitialState::Spherical { r, theta, phi, p_r, p_theta, p_phi } => {
                        for v in [r, theta, phi, p_r, p_theta, p_phi] {
                            finite("initial state", v)?;
                        }
                    }
                    InitialState::Cartesian { q, p } => {
                        for v in q.iter().chain(&p) {
                            finite("initial state", *v)?;
                        }
                        if space.kappa2 <= 0.0 {
                            return Err(CliError::Config("Cartesian initial states need kappa2 > 0".into()));
                        }
                    }
                }
            }
            RunConfig::Audit(a) => {
                for p in &a.potentials {
                    p.validate()?;
                }
                let s = a.samples;
                if s.rank > s.involution {
                    return Err(CliError::Config("`samples.rank` cannot exceed `samples.involution`".into()));
                }
                if s.bracket == 0 && s.involution == 0 && s.oracle == 0 && s.chart == 0 {
                    return Err(CliError::Config("audit has no samples".into()));
                }
            }
            RunConfig::PotentialScan(p) => {
                check_radii("r", &p.r, &space)?;
                finite("alpha", p.alpha)?;
                finite("beta", p.beta)?;
            }
        }
        Ok(space)
    }
}
