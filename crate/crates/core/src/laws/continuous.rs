use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{
    self, beta::beta_pair, gamma::ln_gamma_unchecked, std_normal_cdf, std_normal_quantile,
};

/// The continuous families of the catalog.
///
/// `scale` is the parameter that locates a law within its type: rescaling
/// the variable by `c` multiplies it by `c`. Gaussian laws are centered,
/// uniform laws live on `[0, scale]`, gamma and exponential laws on
/// `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum ContinuousFamily {
    Gaussian { scale: f64 },
    Uniform { scale: f64 },
    Gamma { shape: f64, scale: f64 },
    Exponential { scale: f64 },
    Laplace { scale: f64 },
    Student { dof: f64, scale: f64 },
    Cauchy { scale: f64 },
}

fn positive(what: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidLaw(format!(
            "{what} must be positive and finite, got {v}"
        )))
    }
}

impl ContinuousFamily {
    pub fn gaussian(scale: f64) -> Result<Self> {
        Ok(Self::Gaussian {
            scale: positive("scale", scale)?,
        })
    }

    pub fn uniform(scale: f64) -> Result<Self> {
        Ok(Self::Uniform {
            scale: positive("scale", scale)?,
        })
    }

    pub fn gamma(shape: f64, scale: f64) -> Result<Self> {
        Ok(Self::Gamma {
            shape: positive("shape", shape)?,
            scale: positive("scale", scale)?,
        })
    }

    pub fn exponential(scale: f64) -> Result<Self> {
        Ok(Self::Exponential {
            scale: positive("scale", scale)?,
        })
    }

    pub fn laplace(scale: f64) -> Result<Self> {
        Ok(Self::Laplace {
            scale: positive("scale", scale)?,
        })
    }

    pub fn student(dof: f64, scale: f64) -> Result<Self> {
        Ok(Self::Student {
            dof: positive("degrees of freedom", dof)?,
            scale: positive("scale", scale)?,
        })
    }

    pub fn cauchy(scale: f64) -> Result<Self> {
        Ok(Self::Cauchy {
            scale: positive("scale", scale)?,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Uniform { .. } => "uniform",
            Self::Gamma { .. } => "gamma",
            Self::Exponential { .. } => "exponential",
            Self::Laplace { .. } => "laplace",
            Self::Student { .. } => "student",
            Self::Cauchy { .. } => "cauchy",
        }
    }

    pub fn scale(&self) -> f64 {
        match *self {
            Self::Gaussian { scale }
            | Self::Uniform { scale }
            | Self::Gamma { scale, .. }
            | Self::Exponential { scale }
            | Self::Laplace { scale }
            | Self::Student { scale, .. }
            | Self::Cauchy { scale } => scale,
        }
    }

    /// Same family and shape, different scale.
    pub fn with_scale(&self, scale: f64) -> Result<Self> {
        let scale = positive("scale", scale)?;
        Ok(match *self {
            Self::Gaussian { .. } => Self::Gaussian { scale },
            Self::Uniform { .. } => Self::Uniform { scale },
            Self::Gamma { shape, .. } => Self::Gamma { shape, scale },
            Self::Exponential { .. } => Self::Exponential { scale },
            Self::Laplace { .. } => Self::Laplace { scale },
            Self::Student { dof, .. } => Self::Student { dof, scale },
            Self::Cauchy { .. } => Self::Cauchy { scale },
        })
    }

    /// Log-density; `-∞` outside the support.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        match *self {
            Self::Gaussian { scale } => {
                let r = x / scale;
                -0.5 * r * r - (scale * (2.0 * PI).sqrt()).ln()
            }
            Self::Uniform { scale } => {
                if (0.0..=scale).contains(&x) {
                    -scale.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            Self::Gamma { shape, scale } => {
                if x > 0.0 {
                    (shape - 1.0) * x.ln()
                        - x / scale
                        - shape * scale.ln()
                        - ln_gamma_unchecked(shape)
                } else if x == 0.0 {
                    if shape < 1.0 {
                        f64::INFINITY
                    } else if shape == 1.0 {
                        -scale.ln()
                    } else {
                        f64::NEG_INFINITY
                    }
                } else {
                    f64::NEG_INFINITY
                }
            }
            Self::Exponential { scale } => {
                if x >= 0.0 {
                    -x / scale - scale.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
            Self::Laplace { scale } => -x.abs() / scale - (2.0 * scale).ln(),
            Self::Student { dof, scale } => {
                let r = x / scale;
                -scale.ln()
                    - special::beta::ln_beta_unchecked(0.5, 0.5 * dof)
                    - 0.5 * (dof + 1.0) * (r * r).ln_1p()
            }
            Self::Cauchy { scale } => {
                let r = x / scale;
                -(scale * PI).ln() - (r * r).ln_1p()
            }
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match *self {
            Self::Gaussian { scale } => std_normal_cdf(x / scale),
            Self::Uniform { scale } => (x / scale).clamp(0.0, 1.0),
            Self::Gamma { shape, scale } => {
                if x <= 0.0 {
                    0.0
                } else {
                    special::reg_gamma_cdf(shape, x / scale).unwrap_or(f64::NAN)
                }
            }
            Self::Exponential { scale } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -(-x / scale).exp_m1()
                }
            }
            Self::Laplace { scale } => {
                if x < 0.0 {
                    0.5 * (x / scale).exp()
                } else {
                    1.0 - 0.5 * (-x / scale).exp()
                }
            }
            Self::Student { dof, scale } => {
                let r = x / scale;
                if r <= 0.0 {
                    student_lower_tail(dof, r)
                } else {
                    1.0 - student_lower_tail(dof, -r)
                }
            }
            Self::Cauchy { scale } => {
                if x < 0.0 {
                    (-scale / x).atan() / PI
                } else {
                    0.5 + (x / scale).atan() / PI
                }
            }
        }
    }

    /// `F⁻¹(p)` for `0 < p < 1`; every family here has a strictly
    /// increasing cdf on its support.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain("probability", p));
        }
        Ok(match *self {
            Self::Gaussian { scale } => scale * std_normal_quantile(p)?.value,
            Self::Uniform { scale } => scale * p,
            Self::Gamma { shape, scale } => scale * special::reg_gamma_quantile(shape, p)?.value,
            Self::Exponential { scale } => -scale * (-p).ln_1p(),
            Self::Laplace { scale } => {
                if p <= 0.5 {
                    scale * (2.0 * p).ln()
                } else {
                    -scale * (2.0 * (1.0 - p)).ln()
                }
            }
            Self::Student { dof, scale } => scale * student_standard_quantile(dof, p)?,
            Self::Cauchy { scale } => scale * tan_pi(p - 0.5),
        })
    }

    pub fn mean(&self) -> Option<f64> {
        match *self {
            Self::Gaussian { .. } | Self::Laplace { .. } => Some(0.0),
            Self::Uniform { scale } => Some(0.5 * scale),
            Self::Gamma { shape, scale } => Some(shape * scale),
            Self::Exponential { scale } => Some(scale),
            Self::Student { dof, .. } => (dof > 1.0).then_some(0.0),
            Self::Cauchy { .. } => None,
        }
    }

    pub fn std_dev(&self) -> Option<f64> {
        match *self {
            Self::Gaussian { scale } | Self::Exponential { scale } => Some(scale),
            Self::Uniform { scale } => Some(scale / 12f64.sqrt()),
            Self::Gamma { shape, scale } => Some(scale * shape.sqrt()),
            Self::Laplace { scale } => Some(scale * 2f64.sqrt()),
            Self::Student { dof, scale } => (dof > 2.0).then(|| scale / (dof - 2.0).sqrt()),
            Self::Cauchy { .. } => None,
        }
    }

    pub fn variance(&self) -> Option<f64> {
        match *self {
            Self::Gaussian { scale } | Self::Exponential { scale } => Some(scale * scale),
            Self::Uniform { scale } => Some(scale * scale / 12.0),
            Self::Gamma { shape, scale } => Some(shape * scale * scale),
            Self::Laplace { scale } => Some(2.0 * scale * scale),
            Self::Student { dof, scale } => (dof > 2.0).then(|| scale * scale / (dof - 2.0)),
            Self::Cauchy { .. } => None,
        }
    }
}

/// `tan(πx)` for `|x| < 1/2`, exact at `x = ±1/4`.
fn tan_pi(x: f64) -> f64 {
    if x.abs() == 0.25 {
        x.signum()
    } else {
        (PI * x).tan()
    }
}

/// Student lower tail at the standardized point `r = x/scale ≤ 0`.
///
/// With `w = 1/(1+r²)`: `F = I_w(ν/2, 1/2) / 2`, evaluated through the
/// complementary argument when `w` is close to one.
fn student_lower_tail(dof: f64, r: f64) -> f64 {
    let r2 = r * r;
    if !r2.is_finite() {
        return 0.0;
    }
    let w = 1.0 / (1.0 + r2);
    let z = r2 / (1.0 + r2);
    let value = if r2 < 1.0 {
        beta_pair(0.5, 0.5 * dof, z, w).map(|(_, complement)| complement)
    } else {
        beta_pair(0.5 * dof, 0.5, w, z).map(|(lower, _)| lower)
    };
    0.5 * value.unwrap_or(f64::NAN)
}

/// Quantile of the unit-scale Student law, via the incomplete beta inverse.
fn student_standard_quantile(dof: f64, p: f64) -> Result<f64> {
    if p == 0.5 {
        return Ok(0.0);
    }
    if p > 0.5 {
        return Ok(-student_standard_quantile(dof, 1.0 - p)?);
    }
    let two_p = 2.0 * p;
    if two_p <= 0.5 {
        let w = special::reg_beta_quantile(0.5 * dof, 0.5, two_p)?.value;
        Ok(-((1.0 - w) / w).sqrt())
    } else {
        let z = special::reg_beta_quantile(0.5, 0.5 * dof, 1.0 - two_p)?.value;
        Ok(-(z / (1.0 - z)).sqrt())
    }
}
