use nalgebra::Matrix3;

use super::{contract_ricci, scalar_from, sectional_from, Christoffel, CurvatureReport, RiemannComponents, PAIRS};
use crate::error::{Error, Result};

/// Largest tolerated condition number of the sampled metric.
pub const CONDITION_LIMIT: f64 = 1e10;

const OFFSETS: [f64; 4] = [-2.0, -1.0, 1.0, 2.0];
const FIRST: [f64; 4] = [1.0, -8.0, 8.0, -1.0];
const SECOND: [f64; 4] = [-1.0, 16.0, 16.0, -1.0];

fn shifted(x: &[f64; 3], moves: &[(usize, f64)]) -> [f64; 3] {
    let mut y = *x;
    for &(k, h) in moves {
        y[k] += h;
    }
    y
}

/// Curvature computed from metric values alone by fourth-order central
/// differences.
pub fn curvature_oracle_fd<M>(metric_fn: M, point: &[f64; 3]) -> Result<CurvatureReport>
where
    M: Fn(&[f64; 3]) -> Result<Matrix3<f64>>,
{
    let g = metric_fn(point)?;
    let eig = g.symmetric_eigen().eigenvalues.map(f64::abs);
    let cond = eig.max() / eig.min();
    if !(cond <= CONDITION_LIMIT) {
        return Err(Error::Numerical(format!("metric condition number {cond:e} exceeds {CONDITION_LIMIT:e}")));
    }
    let gi = g.try_inverse().ok_or_else(|| Error::Numerical("singular metric".into()))?;

    let h1 = point.map(|x| f64::EPSILON.powf(0.2) * x.abs().max(1.0));
    let h2 = point.map(|x| f64::EPSILON.powf(1.0 / 6.0) * x.abs().max(1.0));

    let mut dg = [Matrix3::zeros(); 3];
    for c in 0..3 {
        for (&o, &w) in OFFSETS.iter().zip(&FIRST) {
            dg[c] += metric_fn(&shifted(point, &[(c, o * h1[c])]))? * w;
        }
        dg[c] /= 12.0 * h1[c];
    }
    let mut ddg = [[Matrix3::zeros(); 3]; 3];
    for c in 0..3 {
        let mut acc = g * -30.0;
        for (&o, &w) in OFFSETS.iter().zip(&SECOND) {
            acc += metric_fn(&shifted(point, &[(c, o * h2[c])]))? * w;
        }
        ddg[c][c] = acc / (12.0 * h2[c] * h2[c]);
        for d in (c + 1)..3 {
            let mut acc = Matrix3::zeros();
            for (&oc, &wc) in OFFSETS.iter().zip(&FIRST) {
                for (&od, &wd) in OFFSETS.iter().zip(&FIRST) {
                    acc += metric_fn(&shifted(point, &[(c, oc * h2[c]), (d, od * h2[d])]))? * (wc * wd);
                }
            }
            ddg[c][d] = acc / (144.0 * h2[c] * h2[d]);
            ddg[d][c] = ddg[c][d];
        }
    }

    let mut gamma: Christoffel = [[[0.0; 3]; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                gamma[a][b][c] =
                    0.5 * (0..3).map(|d| gi[(a, d)] * (dg[b][(d, c)] + dg[c][(b, d)] - dg[d][(b, c)])).sum::<f64>();
            }
        }
    }

    let lower = |a: usize, b: usize, c: usize, d: usize| -> f64 {
        let mut r = 0.5 * (ddg[b][c][(a, d)] + ddg[a][d][(b, c)] - ddg[a][c][(b, d)] - ddg[b][d][(a, c)]);
        for e in 0..3 {
            for f in 0..3 {
                r += g[(e, f)] * (gamma[e][b][c] * gamma[f][a][d] - gamma[e][b][d] * gamma[f][a][c]);
            }
        }
        r
    };
    let mut pairs = Matrix3::zeros();
    for (p, &(a, b)) in PAIRS.iter().enumerate() {
        for (q, &(c, d)) in PAIRS.iter().enumerate() {
            pairs[(p, q)] = lower(a, b, c, d);
        }
    }
    let riemann = RiemannComponents::from_pairs(pairs);
    let ricci = contract_ricci(&riemann, &gi);
    let sectional = sectional_from(&riemann, &g);
    let scalar = scalar_from(&ricci, &gi);
    Ok(CurvatureReport { metric: g, christoffel: gamma, riemann, ricci, sectional, scalar })
}
