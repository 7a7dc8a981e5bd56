//! Real special functions: Carlson symmetric integrals, incomplete elliptic
//! integrals, the Gauss hypergeometric function and the incomplete beta
//! function with its continuation beyond `x = 1`.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// `1/Γ(x)`, zero at the poles.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        0.0
    } else {
        1.0 / gamma(x)
    }
}

fn checked_gamma(x: f64) -> Result<f64> {
    if is_nonpositive_integer(x) {
        Err(Error::SpecialFunction(format!("Γ has a pole at {x}")))
    } else {
        Ok(gamma(x))
    }
}

/// Complete beta function `Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok(checked_gamma(a)? * checked_gamma(b)? * rgamma(a + b))
}

/// Carlson's `R_F(x, y, z)`.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    if x.min(y).min(z) < 0.0 || [x + y, y + z, z + x].contains(&0.0) {
        return Err(Error::SpecialFunction(format!("R_F({x}, {y}, {z}) is undefined")));
    }
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * f64::EPSILON).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (x0, y0) = (x, y);
    let mut a = a0;
    let mut scale = 1.0;
    while scale * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        scale *= 0.25;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -xx - yy;
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    Ok((1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt())
}

/// Carlson's `R_D(x, y, z)`.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> Result<f64> {
    if x.min(y) < 0.0 || z <= 0.0 || x + y == 0.0 {
        return Err(Error::SpecialFunction(format!("R_D({x}, {y}, {z}) is undefined")));
    }
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + 3.0 * z) / 5.0;
    let q = (0.25 * f64::EPSILON).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (x0, y0) = (x, y);
    let mut a = a0;
    let mut scale = 1.0;
    let mut sum = 0.0;
    while scale * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        sum += scale / (sz * (z + lam));
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        scale *= 0.25;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -(xx + yy) / 3.0;
    let e2 = xx * yy - 6.0 * zz * zz;
    let e3 = (3.0 * xx * yy - 8.0 * zz * zz) * zz;
    let e4 = 3.0 * (xx * yy - zz * zz) * zz * zz;
    let e5 = xx * yy * zz * zz * zz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    Ok(scale * series / (a * a.sqrt()) + 3.0 * sum)
}

/// `F(φ|m) = ∫₀^φ dt/√(1 − m sin²t)` for `|φ| ≤ π/2`.
fn elliptic_f_principal(phi: f64, m: f64) -> Result<f64> {
    let (s, c) = phi.sin_cos();
    let d = 1.0 - m * s * s;
    if d < 0.0 {
        return Err(Error::domain(format!("F({phi}|{m}) is not real")));
    }
    Ok(s * carlson_rf(c * c, d, 1.0)?)
}

fn elliptic_e_principal(phi: f64, m: f64) -> Result<f64> {
    let (s, c) = phi.sin_cos();
    let d = 1.0 - m * s * s;
    if d < 0.0 {
        return Err(Error::domain(format!("E({phi}|{m}) is not real: the radicand is negative")));
    }
    if s == 0.0 {
        return Ok(0.0);
    }
    let (c2, s3) = (c * c, s * s * s);
    Ok(s * carlson_rf(c2, d, 1.0)? - m * s3 / 3.0 * carlson_rd(c2, d, 1.0)?)
}

/// Incomplete elliptic integral of the second kind
/// `E(φ|m) = ∫₀^φ √(1 − m sin²t) dt`, real wherever the radicand stays
/// non-negative on `[0, φ]`.
pub fn incomplete_elliptic_e(phi: f64, m: f64) -> Result<f64> {
    let n = (phi / PI).round();
    let rest = phi - n * PI;
    let mut e = elliptic_e_principal(rest, m)?;
    if n != 0.0 {
        if m > 1.0 {
            return Err(Error::domain(format!("E({phi}|{m}) crosses a region with negative radicand")));
        }
        e += 2.0 * n * elliptic_e_principal(PI / 2.0, m)?;
    }
    Ok(e)
}

/// `∫₀^φ √(1 + m sinh²t) dt`, the elliptic integral on the imaginary axis,
/// via `F(ψ|1−m) − E(ψ|1−m) + tan ψ √(1 − (1−m) sin²ψ)` with `tan ψ = sinh φ`.
pub fn elliptic_e_hyperbolic(phi: f64, m: f64) -> Result<f64> {
    let psi = phi.sinh().atan();
    let mc = 1.0 - m;
    let s = psi.sin();
    let d = 1.0 - mc * s * s;
    if d < 0.0 {
        return Err(Error::domain(format!("hyperbolic E({phi}|{m}) is not real")));
    }
    Ok(elliptic_f_principal(psi, mc)? - elliptic_e_principal(psi, mc)? + psi.tan() * d.sqrt())
}

const SERIES_TERMS: usize = 200_000;

fn hyp_series(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..SERIES_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term == 0.0 || (term.abs() <= 1e-17 * sum.abs() && n > 2) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesDivergence(format!("2F1({a}, {b}; {c}; {x}) series did not converge")))
}

fn terminating(a: f64, b: f64) -> bool {
    is_nonpositive_integer(a) || is_nonpositive_integer(b)
}

/// Gauss hypergeometric function `₂F₁(a, b; c; x)` for real `x ≤ 1`.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    if is_nonpositive_integer(c) {
        return Err(Error::SpecialFunction(format!("2F1 undefined for c = {c}")));
    }
    if terminating(a, b) {
        return hyp_series(a, b, c, x);
    }
    if x > 1.0 {
        return Err(Error::SeriesDivergence(format!("2F1 argument {x} lies on the branch cut")));
    }
    if x == 1.0 {
        let s = c - a - b;
        if s <= 0.0 {
            return Err(Error::SeriesDivergence(format!("2F1 diverges at x = 1 when c − a − b = {s}")));
        }
        return Ok(gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b));
    }
    if x < 0.0 {
        // Pfaff
        return Ok((1.0 - x).powf(-a) * hyp2f1(a, c - b, c, x / (x - 1.0))?);
    }
    if x <= 0.5 {
        return hyp_series(a, b, c, x);
    }
    let s = c - a - b;
    if (s - s.round()).abs() < 1e-9 {
        return hyp_series(a, b, c, x);
    }
    let y = 1.0 - x;
    let first = gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b) * hyp_series(a, b, 1.0 - s, y)?;
    let second = gamma(c) * gamma(-s) * rgamma(a) * rgamma(b) * y.powf(s) * hyp_series(c - a, c - b, 1.0 + s, y)?;
    Ok(first + second)
}

fn positive_integer(b: f64) -> Option<u32> {
    (b >= 1.0 && b == b.round() && b < 64.0).then_some(b as u32)
}

/// `Σⱼ C(n−1, j)(−1)ʲ x^{a+j}/(a+j)`, the incomplete beta for `b = n`.
fn beta_polynomial(x: f64, a: f64, n: u32) -> Result<f64> {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..n {
        let e = a + j as f64;
        if e == 0.0 {
            return Err(Error::SpecialFunction(format!("B(x; {a}, {n}) has a logarithmic term")));
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * x.powf(e) / e;
        binom *= (n - 1 - j) as f64 / (j + 1) as f64;
    }
    Ok(sum)
}

fn beta_lower(x: f64, a: f64, b: f64) -> Result<f64> {
    if let Some(n) = positive_integer(b) {
        return beta_polynomial(x, a, n);
    }
    if is_nonpositive_integer(a) {
        return Err(Error::SpecialFunction(format!("B(x; {a}, {b}) is undefined")));
    }
    Ok(x.powf(a) / a * hyp2f1(a, 1.0 - b, a + 1.0, x)?)
}

/// Incomplete beta function `B(x; a, b) = ∫₀ˣ t^{a−1}(1−t)^{b−1} dt`.
///
/// For `x > 1` this returns `Re[e^{iπ(b−1)} B(x + i0; a, b)]`, i.e.
/// `∫₁ˣ t^{a−1}(t−1)^{b−1} dt + cos(π(b−1)) B(a, b)`.
pub fn incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain(format!("incomplete beta needs x ≥ 0, got {x}")));
    }
    if x <= 1.0 {
        return beta_lower(x, a, b);
    }
    let phase = (PI * (b - 1.0)).cos();
    if let Some(n) = positive_integer(b) {
        return Ok(phase * beta_polynomial(x, a, n)?);
    }
    let a2 = 1.0 - a - b;
    let y = 1.0 / x;
    let tail = beta(a2, b)? - beta_lower(y, a2, b)?;
    let complete = if phase.abs() < 1e-15 { 0.0 } else { phase * beta(a, b)? };
    Ok(tail + complete)
}
