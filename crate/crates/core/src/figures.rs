//! Curve data for the gamma and Student families as functions of their
//! shape parameter.

use serde::Serialize;

use crate::entropy::{h_bar, h_hat, h_tilde};
use crate::error::{Error, Result};
use crate::laws::Law;

pub const DEFAULT_STEPS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Figure {
    /// `h̃` of gamma laws.
    GammaTilde = 1,
    /// `h̃` of Student laws.
    StudentTilde = 2,
    /// `ĥ` of gamma laws.
    GammaHat = 3,
    /// `ĥ` of Student laws, defined for `λ > 2`.
    StudentHat = 4,
    /// `h̄` of gamma laws.
    GammaBar = 5,
    /// `h̄` of Student laws.
    StudentBar = 6,
}

impl Figure {
    pub fn from_id(id: u8) -> Option<Self> {
        use Figure::*;
        [
            GammaTilde,
            StudentTilde,
            GammaHat,
            StudentHat,
            GammaBar,
            StudentBar,
        ]
        .into_iter()
        .find(|f| *f as u8 == id)
    }

    pub fn id(self) -> u8 {
        self as u8
    }

    /// Column name for the curve values.
    pub fn column(self) -> &'static str {
        match self {
            Figure::GammaTilde | Figure::StudentTilde => "h_tilde",
            Figure::GammaHat | Figure::StudentHat => "h_hat",
            Figure::GammaBar | Figure::StudentBar => "h_bar",
        }
    }

    pub fn default_range(self) -> (f64, f64) {
        match self {
            Figure::GammaTilde | Figure::GammaHat | Figure::GammaBar => (0.1, 50.0),
            Figure::StudentTilde | Figure::StudentBar => (0.5, 50.0),
            Figure::StudentHat => (2.25, 50.0),
        }
    }

    /// The curve at shape `lam`; `None` where it is undefined.
    pub fn value(self, lam: f64) -> Result<Option<f64>> {
        let law = match self {
            Figure::GammaTilde | Figure::GammaHat | Figure::GammaBar => Law::gamma(lam, 1.0)?,
            _ => Law::student(lam, 1.0)?,
        };
        let v = match self {
            Figure::GammaTilde | Figure::StudentTilde => h_tilde(&law),
            Figure::GammaHat | Figure::StudentHat => h_hat(&law),
            Figure::GammaBar | Figure::StudentBar => h_bar(&law),
        };
        match v {
            Ok(v) => Ok(Some(v)),
            Err(Error::NoVariance) => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// `(λ, value)` on `steps` evenly spaced points from `from` to `to`.
    pub fn curve(self, from: f64, to: f64, steps: usize) -> Result<Vec<(f64, Option<f64>)>> {
        if !(from > 0.0 && to > from && to.is_finite()) {
            return Err(Error::domain("figure range start", from));
        }
        if steps < 2 {
            return Err(Error::domain("figure steps", steps as f64));
        }
        let last = (steps - 1) as f64;
        (0..steps)
            .map(|i| {
                let lam = if i + 1 == steps {
                    to
                } else {
                    from + (to - from) * i as f64 / last
                };
                Ok((lam, self.value(lam)?))
            })
            .collect()
    }
}
