//! Metrics, connections and curvature in Cartesian and spherical-type
//! coordinates, the map between them, and a finite-difference oracle.

mod cartesian;
mod chart;
mod oracle;
mod spherical;

use nalgebra::Matrix3;

pub use cartesian::{christoffel_cartesian, curvature_cartesian, line_element_cartesian, metric_cartesian};
pub use chart::{chart_jacobian, to_cartesian, to_spherical};
pub use oracle::{curvature_oracle_fd, CONDITION_LIMIT};
pub use spherical::{curvature_spherical, metric_spherical};

/// `christoffel[a][b][c] = Γᵃ_bc`.
pub type Christoffel = [[[f64; 3]; 3]; 3];

/// Bivector index of the coordinate plane `(i, j)`, `i < j`.
const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn pair_index(i: usize, j: usize) -> (usize, f64) {
    let (lo, hi, sign) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    let k = PAIRS.iter().position(|&p| p == (lo, hi)).expect("distinct indices");
    (k, sign)
}

/// The six independent components `R_abcd` of a 3D Riemann tensor, stored
/// as a symmetric matrix over the planes (12, 13, 23).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannComponents {
    pairs: Matrix3<f64>,
}

impl RiemannComponents {
    pub fn from_pairs(pairs: Matrix3<f64>) -> Self {
        RiemannComponents { pairs: (pairs + pairs.transpose()) * 0.5 }
    }

    pub fn pairs(&self) -> &Matrix3<f64> {
        &self.pairs
    }

    /// All-lower component `R_abcd`.
    pub fn lower(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        if a == b || c == d {
            return 0.0;
        }
        let (p, sp) = pair_index(a, b);
        let (q, sq) = pair_index(c, d);
        sp * sq * self.pairs[(p, q)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub metric: Matrix3<f64>,
    pub christoffel: Christoffel,
    pub riemann: RiemannComponents,
    pub ricci: Matrix3<f64>,
    /// Sectional curvatures of the coordinate planes (12, 13, 23).
    pub sectional: [f64; 3],
    pub scalar: f64,
}

impl CurvatureReport {
    fn metric_inverse(&self) -> Matrix3<f64> {
        self.metric.try_inverse().unwrap_or_else(|| Matrix3::from_element(f64::NAN))
    }

    /// `Rᵃ_bcd = gᵃᵉ R_ebcd`.
    pub fn riemann_mixed(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        let gi = self.metric_inverse();
        (0..3).map(|e| gi[(a, e)] * self.riemann.lower(e, b, c, d)).sum()
    }

    /// Ricci tensor contracted from the stored Riemann components.
    pub fn ricci_from_riemann(&self) -> Matrix3<f64> {
        contract_ricci(&self.riemann, &self.metric_inverse())
    }

    pub fn sectional_from_riemann(&self) -> [f64; 3] {
        sectional_from(&self.riemann, &self.metric)
    }

    /// `K − 2(K₁₂ + K₁₃ + K₂₃)`.
    pub fn identity_residual(&self) -> f64 {
        self.scalar - 2.0 * self.sectional.iter().sum::<f64>()
    }

    /// Largest `|Γᵃ_bc − Γᵃ_cb|`.
    pub fn torsion(&self) -> f64 {
        let mut m: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    m = m.max((self.christoffel[a][b][c] - self.christoffel[a][c][b]).abs());
                }
            }
        }
        m
    }

    /// Largest `|R_ab − R_ba|`.
    pub fn ricci_asymmetry(&self) -> f64 {
        (self.ricci - self.ricci.transpose()).abs().max()
    }
}

fn contract_ricci(riemann: &RiemannComponents, gi: &Matrix3<f64>) -> Matrix3<f64> {
    Matrix3::from_fn(|b, d| {
        let mut s = 0.0;
        for a in 0..3 {
            for c in 0..3 {
                s += gi[(a, c)] * riemann.lower(a, b, c, d);
            }
        }
        s
    })
}

fn sectional_from(riemann: &RiemannComponents, g: &Matrix3<f64>) -> [f64; 3] {
    PAIRS.map(|(i, j)| riemann.lower(i, j, i, j) / (g[(i, i)] * g[(j, j)] - g[(i, j)] * g[(i, j)]))
}

fn scalar_from(ricci: &Matrix3<f64>, gi: &Matrix3<f64>) -> f64 {
    gi.component_mul(ricci).sum()
}

/// `Rᵃ_bcd = ∂_cΓᵃ_db − ∂_dΓᵃ_cb + Γᵃ_ce Γᵉ_db − Γᵃ_de Γᵉ_cb` given
/// `dgamma[c] = ∂_c Γ`.
fn riemann_up(gamma: &Christoffel, dgamma: &[Christoffel; 3], a: usize, b: usize, c: usize, d: usize) -> f64 {
    let mut r = dgamma[c][a][d][b] - dgamma[d][a][c][b];
    for e in 0..3 {
        r += gamma[a][c][e] * gamma[e][d][b] - gamma[a][d][e] * gamma[e][c][b];
    }
    r
}

/// Riemann and Ricci from a connection and its derivatives.
fn curvature_from_connection(
    metric: &Matrix3<f64>,
    gamma: &Christoffel,
    dgamma: &[Christoffel; 3],
) -> (RiemannComponents, Matrix3<f64>) {
    let mut pairs = Matrix3::zeros();
    for (p, &(a, b)) in PAIRS.iter().enumerate() {
        for (q, &(c, d)) in PAIRS.iter().enumerate() {
            pairs[(p, q)] = (0..3).map(|e| metric[(a, e)] * riemann_up(gamma, dgamma, e, b, c, d)).sum();
        }
    }
    let ricci = Matrix3::from_fn(|b, d| (0..3).map(|a| riemann_up(gamma, dgamma, a, b, a, d)).sum());
    (RiemannComponents::from_pairs(pairs), ricci)
}
