//! Closed forms for the continuous catalog.

use std::f64::consts::{E, LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::ContinuousFamily;
use crate::special::{digamma, ln_beta, ln_gamma, reg_gamma_quantile, std_normal_quantile};

/// `ln √(2πe)`, the entropy of the standard Gaussian.
pub const LN_SQRT_2PI_E: f64 = 1.4189385332046727;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    HTilde,
    HHat,
    HBar,
}

/// Differential entropy of a catalog family, in nats.
pub fn family_entropy(family: &ContinuousFamily) -> Result<f64> {
    Ok(match *family {
        ContinuousFamily::Gaussian { scale } => scale.ln() + LN_SQRT_2PI_E,
        ContinuousFamily::Uniform { scale } => scale.ln(),
        ContinuousFamily::Gamma { shape, scale } => {
            (1.0 - shape) * digamma(shape)? + scale.ln() + shape + ln_gamma(shape)?
        }
        ContinuousFamily::Exponential { scale } => 1.0 + scale.ln(),
        ContinuousFamily::Laplace { scale } => (2.0 * scale).ln() + 1.0,
        ContinuousFamily::Student { dof, scale } => {
            student_core(dof)? + scale.ln() + ln_beta(0.5, 0.5 * dof)?
        }
        ContinuousFamily::Cauchy { scale } => (4.0 * PI * scale).ln(),
    })
}

/// `(λ+1)/2 · [ψ((λ+1)/2) − ψ(λ/2)]`
fn student_core(dof: f64) -> Result<f64> {
    let half = 0.5 * (dof + 1.0);
    Ok(half * (digamma(half)? - digamma(0.5 * dof)?))
}

fn gamma_core(shape: f64) -> Result<f64> {
    Ok((1.0 - shape) * digamma(shape)? + shape + ln_gamma(shape)?)
}

/// The published closed form of `h̃`, `ĥ` or `h̄` for a family. These are
/// kept separate from the generic pipeline so that each can check the
/// other.
pub fn catalog_closed_form(family: &ContinuousFamily, which: Which) -> Result<f64> {
    use ContinuousFamily as F;
    match (which, *family) {
        (Which::HTilde, F::Gaussian { .. }) => {
            let iqr = std_normal_quantile(0.75)?.value - std_normal_quantile(0.25)?.value;
            Ok(LN_SQRT_2PI_E - iqr.ln())
        }
        (Which::HTilde, F::Uniform { .. }) => Ok(LN_2),
        (Which::HTilde, F::Gamma { shape, .. }) => {
            let iqr =
                reg_gamma_quantile(shape, 0.75)?.value - reg_gamma_quantile(shape, 0.25)?.value;
            Ok(gamma_core(shape)? - iqr.ln())
        }
        (Which::HTilde, F::Exponential { .. }) => Ok(1.0 - 3f64.ln().ln()),
        (Which::HTilde, F::Laplace { .. }) => Ok(1.0 - LN_2.ln()),
        (Which::HTilde, F::Cauchy { .. }) => Ok((2.0 * PI).ln()),
        (Which::HTilde, F::Student { .. }) => Err(Error::UnsupportedFamily(
            "student h_tilde has no closed form".into(),
        )),

        (Which::HHat, F::Gaussian { .. }) => Ok(0.0),
        (Which::HHat, F::Uniform { .. }) => Ok(0.5 * (PI * E / 6.0).ln()),
        (Which::HHat, F::Gamma { shape, .. }) => Ok(0.5 * (2.0 * PI * E * shape).ln()
            - shape
            - ln_gamma(shape)?
            - (1.0 - shape) * digamma(shape)?),
        (Which::HHat, F::Exponential { .. }) => Ok(0.5 * (2.0 * PI / E).ln()),
        (Which::HHat, F::Laplace { .. }) => Ok(0.5 * (PI / E).ln()),
        (Which::HHat, F::Student { dof, .. }) if dof > 2.0 => Ok(-student_core(dof)?
            - 0.5 * ((dof - 2.0) / (2.0 * PI * E)).ln()
            - ln_beta(0.5, 0.5 * dof)?),
        (Which::HHat, F::Student { .. } | F::Cauchy { .. }) => Err(Error::NoVariance),

        (Which::HBar, F::Gaussian { .. }) => Ok(LN_SQRT_2PI_E),
        (Which::HBar, F::Uniform { .. }) => Ok(0.0),
        (Which::HBar, F::Gamma { shape, .. }) => gamma_core(shape),
        (Which::HBar, F::Exponential { .. }) => Ok(1.0),
        (Which::HBar, F::Laplace { .. }) => Ok(1.0 + LN_2),
        (Which::HBar, F::Student { dof, .. }) => Ok(student_core(dof)? + ln_beta(0.5, 0.5 * dof)?),
        (Which::HBar, F::Cauchy { .. }) => Ok((4.0 * PI).ln()),
    }
}
