//! κ-dependent trigonometry and the removable-singularity kernels used by
//! the realizations.
//!
//! `kcos`, `ksin`, `ktan` are cos, sin, tan of `√κ x` (scaled by `1/√κ` for
//! sine and tangent) for κ > 0, their hyperbolic counterparts for κ < 0 and
//! `1, x, x` at κ = 0.

/// Threshold under which `sinh(u)/u` switches to its Taylor series.
pub const SERIES_CUTOFF: f64 = 1e-6;

pub fn kcos(kappa: f64, x: f64) -> f64 {
    if kappa > 0.0 {
        (kappa.sqrt() * x).cos()
    } else if kappa < 0.0 {
        ((-kappa).sqrt() * x).cosh()
    } else {
        1.0
    }
}

pub fn ksin(kappa: f64, x: f64) -> f64 {
    if kappa > 0.0 {
        let l = kappa.sqrt();
        (l * x).sin() / l
    } else if kappa < 0.0 {
        let l = (-kappa).sqrt();
        (l * x).sinh() / l
    } else {
        x
    }
}

pub fn ktan(kappa: f64, x: f64) -> f64 {
    if kappa > 0.0 {
        let l = kappa.sqrt();
        (l * x).tan() / l
    } else if kappa < 0.0 {
        let l = (-kappa).sqrt();
        (l * x).tanh() / l
    } else {
        x
    }
}

/// Inverse of `ktan`. For κ < 0 the argument must satisfy `|√−κ t| < 1`.
pub fn katan(kappa: f64, t: f64) -> f64 {
    if kappa > 0.0 {
        let l = kappa.sqrt();
        (l * t).atan() / l
    } else if kappa < 0.0 {
        let l = (-kappa).sqrt();
        (l * t).atanh() / l
    } else {
        t
    }
}

/// `kcos(κ, x) − 1` without cancellation.
pub fn kcos_m1(kappa: f64, x: f64) -> f64 {
    let s = ksin(kappa, 0.5 * x);
    -2.0 * kappa * s * s
}

/// `sinh(u)/u`.
pub fn sinhc(u: f64) -> f64 {
    if u.abs() < SERIES_CUTOFF {
        let u2 = u * u;
        1.0 + u2 / 6.0 * (1.0 + u2 / 20.0 * (1.0 + u2 / 42.0))
    } else {
        u.sinh() / u
    }
}

/// `u·coth(u)`.
pub fn ucoth(u: f64) -> f64 {
    if u.abs() < 0.1 {
        let u2 = u * u;
        1.0 + u2 * (1.0 / 3.0 + u2 * (-1.0 / 45.0 + u2 * (2.0 / 945.0 + u2 * (-1.0 / 4725.0 + u2 * 2.0 / 93555.0))))
    } else {
        u / u.tanh()
    }
}

/// `(1 − u·coth u)/u`, smooth through `u = 0`.
pub fn one_minus_ucoth_over_u(u: f64) -> f64 {
    if u.abs() < 0.1 {
        let u2 = u * u;
        -u * (1.0 / 3.0 + u2 * (-1.0 / 45.0 + u2 * (2.0 / 945.0 + u2 * (-1.0 / 4725.0 + u2 * 2.0 / 93555.0))))
    } else {
        (1.0 - u / u.tanh()) / u
    }
}

/// `expm1(w)/w`.
pub fn expm1c(w: f64) -> f64 {
    if w.abs() < SERIES_CUTOFF {
        1.0 + w / 2.0 * (1.0 + w / 3.0 * (1.0 + w / 4.0))
    } else {
        w.exp_m1() / w
    }
}

/// `ln(1 + x)/x`.
pub fn log1pc(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        1.0 - x / 2.0 + x * x / 3.0 - x * x * x / 4.0
    } else {
        x.ln_1p() / x
    }
}
