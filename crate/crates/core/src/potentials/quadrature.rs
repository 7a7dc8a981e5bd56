//! Adaptive Gauss–Kronrod (7, 15) quadrature.

#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        QuadratureSettings { abs_tol: 1e-10, rel_tol: 1e-12, max_subdivisions: 10_000 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn panel<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<f64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x)? + f(c + x)?;
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    let (value, error) = (kronrod * h, ((kronrod - gauss) * h).abs());
    if !value.is_finite() {
        return Err(Error::QuadratureFailure(format!("non-finite integrand on [{a}, {b}]")));
    }
    Ok(Panel { a, b, value, error })
}

/// `∫ₐᵇ f`, bisecting the panel with the largest error estimate until the
/// total estimate meets `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F>(f: F, a: f64, b: f64, settings: QuadratureSettings) -> Result<Quadrature>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(Quadrature { value: 0.0, error: 0.0, subdivisions: 0 });
    }
    let mut heap = BinaryHeap::new();
    let first = panel(&f, a, b)?;
    let (mut value, mut error) = (first.value, first.error);
    heap.push(first);
    let mut subdivisions = 0;
    while error > settings.abs_tol.max(settings.rel_tol * value.abs()) {
        if subdivisions >= settings.max_subdivisions {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {error:e} after {subdivisions} subdivisions"
            )));
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let left = panel(&f, worst.a, mid)?;
        let right = panel(&f, mid, worst.b)?;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
    }
    // re-sum to shed the rounding accumulated by the running updates
    let value = heap.iter().map(|p| p.value).sum();
    let error = heap.iter().map(|p| p.error).sum();
    Ok(Quadrature { value, error, subdivisions })
}
