//! Smooth compactly supported windows.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WindowKind {
    /// `exp(1 - 1/(1 - (2x-3)^2))` on `(1, 2)`, peak 1 at `x = 3/2`
    Bump12,
    /// supported on `[1/2, 5/2]`, equal to 1 on `[1, 2]`
    PlateauHalf52,
    /// supported on `[1/2, 3]`, equal to 1 on `[1, 2]`
    BumpUnit,
}

impl fmt::Display for WindowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowKind::Bump12 => "bump_12",
            WindowKind::PlateauHalf52 => "plateau_half_52",
            WindowKind::BumpUnit => "bump_unit",
        })
    }
}

impl FromStr for WindowKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "bump_12" => Ok(WindowKind::Bump12),
            "plateau_half_52" => Ok(WindowKind::PlateauHalf52),
            "bump_unit" => Ok(WindowKind::BumpUnit),
            other => Err(Error::Config(format!("unknown window kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmoothWindow {
    kind: WindowKind,
}

pub fn window(kind: WindowKind) -> SmoothWindow {
    SmoothWindow { kind }
}

impl SmoothWindow {
    pub fn kind(&self) -> WindowKind {
        self.kind
    }

    /// Closed support interval.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            WindowKind::Bump12 => (1.0, 2.0),
            WindowKind::PlateauHalf52 => (0.5, 2.5),
            WindowKind::BumpUnit => (0.5, 3.0),
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            WindowKind::Bump12 => {
                if x <= 1.0 || x >= 2.0 {
                    return 0.0;
                }
                let u = 2.0 * x - 3.0;
                (1.0 - 1.0 / (1.0 - u * u)).exp()
            }
            WindowKind::PlateauHalf52 => plateau(x, 2.5),
            WindowKind::BumpUnit => plateau(x, 3.0),
        }
    }

    /// `w(x / scale)`, the window stretched to `scale * support`.
    #[inline]
    pub fn eval_scaled(&self, x: f64, scale: f64) -> f64 {
        self.eval(x / scale)
    }
}

/// Rises on `[1/2, 1]`, equals 1 on `[1, 2]`, falls on `[2, end]`.
#[inline]
fn plateau(x: f64, end: f64) -> f64 {
    if x <= 0.5 || x >= end {
        0.0
    } else if x < 1.0 {
        smoothstep((x - 0.5) / 0.5)
    } else if x <= 2.0 {
        1.0
    } else {
        smoothstep((end - x) / (end - 2.0))
    }
}

#[inline]
fn flat(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

/// `B(t) / (B(t) + B(1-t))` with `B(t) = exp(-1/t)`.
#[inline]
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = flat(t);
        a / (a + flat(1.0 - t))
    }
}
