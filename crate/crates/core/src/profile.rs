//! Conformal profiles `f(x)` and their radial form `g(λ₁r) = f(x)` with
//! `x = −ln C_z(r)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ktrig::{kcos, kcos_m1, ktan};

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// A user-supplied profile given by `f`, `f′`, `f″`.
#[derive(Clone)]
pub struct CustomProfile {
    pub name: String,
    pub f: ScalarFn,
    pub df: ScalarFn,
    pub d2f: ScalarFn,
}

impl fmt::Debug for CustomProfile {
    fn fmt(&self, fmt: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt.debug_struct("CustomProfile").field("name", &self.name).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum ConformalProfile {
    /// `f ≡ 1`, `g ≡ 1`.
    Identity,
    /// `f = e^{sx}`, `g = cos^{−s} y`.
    Exponential(Sign),
    /// `g = cos^{4k−1} y`, i.e. `f = e^{(1−4k)x}`.
    PowerCosine {
        k: f64,
    },
    /// `g = cos³ y`, i.e. `f = e^{−3x}`.
    CosCubed,
    Custom(CustomProfile),
}

/// The closed-form Green-function families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GreenCase {
    ConstantCurvature,
    Identity,
    PowerCosine(f64),
    CosCubed,
}

/// `g` and its first two derivatives with respect to `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialProfile {
    pub g: f64,
    pub g_r: f64,
    pub g_rr: f64,
}

impl ConformalProfile {
    pub fn constant_curvature() -> Self {
        ConformalProfile::Exponential(Sign::Plus)
    }

    pub fn custom<F, D, D2>(name: &str, f: F, df: D, d2f: D2) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        ConformalProfile::Custom(CustomProfile {
            name: name.to_string(),
            f: Arc::new(f),
            df: Arc::new(df),
            d2f: Arc::new(d2f),
        })
    }

    /// The rate `c` when `f = e^{cx}`; `None` for custom profiles.
    pub fn exponent(&self) -> Option<f64> {
        match self {
            ConformalProfile::Identity => Some(0.0),
            ConformalProfile::Exponential(s) => Some(s.value()),
            ConformalProfile::PowerCosine { k } => Some(1.0 - 4.0 * k),
            ConformalProfile::CosCubed => Some(-3.0),
            ConformalProfile::Custom(_) => None,
        }
    }

    pub fn green_case(&self) -> Option<GreenCase> {
        match self {
            ConformalProfile::Identity => Some(GreenCase::Identity),
            ConformalProfile::Exponential(Sign::Plus) => Some(GreenCase::ConstantCurvature),
            ConformalProfile::Exponential(Sign::Minus) => Some(GreenCase::PowerCosine(0.5)),
            ConformalProfile::PowerCosine { k } => Some(GreenCase::PowerCosine(*k)),
            ConformalProfile::CosCubed => Some(GreenCase::CosCubed),
            ConformalProfile::Custom(_) => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ConformalProfile::Identity => "identity".into(),
            ConformalProfile::Exponential(Sign::Plus) => "exponential(+1)".into(),
            ConformalProfile::Exponential(Sign::Minus) => "exponential(-1)".into(),
            ConformalProfile::PowerCosine { k } => format!("power-cosine({k})"),
            ConformalProfile::CosCubed => "cos-cubed".into(),
            ConformalProfile::Custom(c) => format!("custom({})", c.name),
        }
    }

    pub fn f(&self, x: f64) -> f64 {
        match self {
            ConformalProfile::Custom(c) => (c.f)(x),
            _ => self.log_f(x).exp(),
        }
    }

    pub fn df(&self, x: f64) -> f64 {
        match (self, self.exponent()) {
            (ConformalProfile::Custom(c), _) => (c.df)(x),
            (_, Some(c)) => c * (c * x).exp(),
            _ => unreachable!(),
        }
    }

    pub fn d2f(&self, x: f64) -> f64 {
        match (self, self.exponent()) {
            (ConformalProfile::Custom(c), _) => (c.d2f)(x),
            (_, Some(c)) => c * c * (c * x).exp(),
            _ => unreachable!(),
        }
    }

    /// `ln f(x)`, exact for the exponential family.
    pub fn log_f(&self, x: f64) -> f64 {
        match self.exponent() {
            Some(c) => c * x,
            None => self.f(x).ln(),
        }
    }

    /// `f′(x)/f(x)`.
    pub fn log_derivative(&self, x: f64) -> f64 {
        match self.exponent() {
            Some(c) => c,
            None => self.df(x) / self.f(x),
        }
    }

    /// `g(y) = f(−ln cos y)` for `y ∈ (−π/2, π/2)`.
    pub fn g(&self, y: f64) -> f64 {
        self.f(-y.cos().ln())
    }

    /// `g(λ₁r)` and its `r`-derivatives, valid for either sign of `z`.
    pub fn radial(&self, z: f64, r: f64) -> RadialProfile {
        let cr = kcos(z, r);
        let x = -kcos_m1(z, r).ln_1p();
        let xp = z * ktan(z, r);
        let xpp = z / (cr * cr);
        let (f, fp, fpp) = (self.f(x), self.df(x), self.d2f(x));
        RadialProfile { g: f, g_r: fp * xp, g_rr: fpp * xp * xp + fp * xpp }
    }

    /// Check `f(0) = 1` and derivative consistency at a few sample points.
    pub fn validate(&self) -> Result<()> {
        if let ConformalProfile::PowerCosine { k } = self {
            if !k.is_finite() || (*k - 1.0).abs() < 1e-12 {
                return Err(Error::domain(format!("power-cosine exponent k={k} is not allowed")));
            }
        }
        let f0 = self.f(1e-12);
        if !f0.is_finite() || (f0 - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("profile {} has f(0) = {f0}, expected 1", self.label())));
        }
        for &x in &[-0.4, -0.05, 0.1, 0.6] {
            let h = 1e-5;
            let fd1 = (self.f(x + h) - self.f(x - h)) / (2.0 * h);
            let fd2 = (self.df(x + h) - self.df(x - h)) / (2.0 * h);
            let (d1, d2) = (self.df(x), self.d2f(x));
            if (fd1 - d1).abs() > 1e-6 * d1.abs().max(1.0) || (fd2 - d2).abs() > 1e-6 * d2.abs().max(1.0) {
                return Err(Error::domain(format!("profile {} derivatives are inconsistent at x={x}", self.label())));
            }
        }
        Ok(())
    }
}
