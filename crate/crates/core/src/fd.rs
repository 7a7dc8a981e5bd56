//! Central finite differences on canonical phase space.

use crate::error::{Error, Result};
use crate::space::{PhaseArray, PhasePointCartesian, PhasePointSpherical};

/// A phase point expressible as canonical `(q, p)` coordinates.
pub trait Canonical: Sized {
    fn to_phase(&self) -> PhaseArray;
    fn from_phase(a: &PhaseArray) -> Self;
}

impl Canonical for PhasePointCartesian {
    fn to_phase(&self) -> PhaseArray {
        self.to_array()
    }
    fn from_phase(a: &PhaseArray) -> Self {
        Self::from_array(a)
    }
}

impl Canonical for PhasePointSpherical {
    fn to_phase(&self) -> PhaseArray {
        self.to_array()
    }
    fn from_phase(a: &PhaseArray) -> Self {
        Self::from_array(a)
    }
}

impl Canonical for PhaseArray {
    fn to_phase(&self) -> PhaseArray {
        *self
    }
    fn from_phase(a: &PhaseArray) -> Self {
        *a
    }
}

fn stencil_step(x: f64) -> f64 {
    let h = f64::EPSILON.cbrt() * x.abs().max(1.0);
    (x + h) - x
}

fn stencil_error(e: Error) -> Error {
    match e {
        Error::Evaluation(_) => e,
        other => Error::Evaluation(other.to_string()),
    }
}

/// Gradient by central differences with `h = ∛ε·max(1,|x_k|)`.
pub fn gradient<S, F>(f: &F, state: &S) -> Result<PhaseArray>
where
    S: Canonical,
    F: Fn(&S) -> Result<f64>,
{
    let x = state.to_phase();
    let mut g = [0.0; 6];
    for k in 0..6 {
        let h = stencil_step(x[k]);
        let mut xp = x;
        let mut xm = x;
        xp[k] += h;
        xm[k] -= h;
        let fp = f(&S::from_phase(&xp)).map_err(stencil_error)?;
        let fm = f(&S::from_phase(&xm)).map_err(stencil_error)?;
        g[k] = (fp - fm) / (2.0 * h);
    }
    Ok(g)
}

/// Five-point central gradient, `O(h⁴)`, with `h = ε^{1/5}·max(0.01,|x_k|)`.
/// The relative step suits functions whose length scale is `|x_k|` itself,
/// such as chart maps near the origin.
pub fn gradient_fourth_order<S, F>(f: &F, state: &S) -> Result<PhaseArray>
where
    S: Canonical,
    F: Fn(&S) -> Result<f64>,
{
    let x = state.to_phase();
    let mut g = [0.0; 6];
    for k in 0..6 {
        let h = {
            let h = f64::EPSILON.powf(0.2) * x[k].abs().max(0.01);
            (x[k] + h) - x[k]
        };
        let at = |m: f64| {
            let mut y = x;
            y[k] += m * h;
            f(&S::from_phase(&y)).map_err(stencil_error)
        };
        g[k] = (8.0 * (at(1.0)? - at(-1.0)?) - (at(2.0)? - at(-2.0)?)) / (12.0 * h);
    }
    Ok(g)
}

/// `Σᵢ ∂qᵢA ∂pᵢB − ∂pᵢA ∂qᵢB` from a pair of gradients.
pub fn bracket_from_gradients(ga: &PhaseArray, gb: &PhaseArray) -> f64 {
    (0..3).map(|i| ga[i] * gb[i + 3] - ga[i + 3] * gb[i]).sum()
}

/// Canonical Poisson bracket `{A, B}` at `state`.
pub fn poisson_bracket<S, A, B>(fn_a: A, fn_b: B, state: &S) -> Result<f64>
where
    S: Canonical,
    A: Fn(&S) -> Result<f64>,
    B: Fn(&S) -> Result<f64>,
{
    let ga = gradient(&fn_a, state)?;
    let gb = gradient(&fn_b, state)?;
    Ok(bracket_from_gradients(&ga, &gb))
}

/// `{A, B}` from fourth-order gradients.
pub fn poisson_bracket_fourth_order<S, A, B>(fn_a: A, fn_b: B, state: &S) -> Result<f64>
where
    S: Canonical,
    A: Fn(&S) -> Result<f64>,
    B: Fn(&S) -> Result<f64>,
{
    let ga = gradient_fourth_order(&fn_a, state)?;
    let gb = gradient_fourth_order(&fn_b, state)?;
    Ok(bracket_from_gradients(&ga, &gb))
}

/// Euclidean norm of a gradient.
pub fn norm(g: &PhaseArray) -> f64 {
    g.iter().map(|v| v * v).sum::<f64>().sqrt()
}
