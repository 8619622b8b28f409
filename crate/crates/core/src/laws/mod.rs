//! The law catalog.
//!
//! A [`Law`] is one of: a continuous family, a finite discrete law, an
//! affine image `a·X + b` (`a > 0`) of another law, or a finite mixture.
//! Laws are immutable once built.

mod continuous;
pub(crate) mod discrete;
mod spec;

pub use continuous::ContinuousFamily;
pub use discrete::{DiscreteKind, DiscreteLaw, POISSON_TAIL_MASS};
pub use spec::{parse_law, ParseError};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Law {
    Continuous(ContinuousFamily),
    Discrete(DiscreteLaw),
    Affine(AffineLaw),
    Mixture(MixtureLaw),
}

/// The law of `scale·X + shift` where `X` follows `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineLaw {
    base: Box<Law>,
    scale: f64,
    shift: f64,
    // image of the atoms when the base is discrete
    mapped: Option<DiscreteLaw>,
}

impl AffineLaw {
    pub fn new(base: Law, scale: f64, shift: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidLaw(format!(
                "affine scale must be positive, got {scale}"
            )));
        }
        if !shift.is_finite() {
            return Err(Error::InvalidLaw(format!(
                "affine shift must be finite, got {shift}"
            )));
        }
        let mapped = match base.atoms() {
            Some(atoms) => Some(atoms.mapped(scale, shift)?),
            None => None,
        };
        Ok(AffineLaw {
            base: Box::new(base),
            scale,
            shift,
            mapped,
        })
    }

    pub fn base(&self) -> &Law {
        &self.base
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }
}

/// A convex combination of laws. Nested mixtures are flattened.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureLaw {
    components: Vec<(f64, Law)>,
}

impl MixtureLaw {
    pub fn new(components: Vec<(f64, Law)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidLaw(
                "a mixture needs at least one component".into(),
            ));
        }
        let mut flat = Vec::with_capacity(components.len());
        for (weight, law) in components {
            if !(weight > 0.0 && weight <= 1.0) {
                return Err(Error::InvalidLaw(format!(
                    "mixture weight {weight} not in (0, 1]"
                )));
            }
            match law {
                Law::Mixture(inner) => {
                    flat.extend(inner.components.into_iter().map(|(w, l)| (weight * w, l)))
                }
                other => flat.push((weight, other)),
            }
        }
        let total: f64 = flat.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidLaw(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        Ok(MixtureLaw { components: flat })
    }

    pub fn components(&self) -> &[(f64, Law)] {
        &self.components
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let v: f64 = self.components.iter().map(|(w, law)| w * law.cdf(x)).sum();
        v.min(1.0)
    }

    pub fn mean(&self) -> Option<f64> {
        self.components
            .iter()
            .map(|(w, law)| law.mean().map(|m| w * m))
            .sum()
    }

    pub fn variance(&self) -> Option<f64> {
        let mean = self.mean()?;
        let second: Option<f64> = self
            .components
            .iter()
            .map(|(w, law)| {
                let m = law.mean()?;
                Some(w * (law.variance()? + m * m))
            })
            .sum();
        Some((second? - mean * mean).max(0.0))
    }
}

impl Law {
    pub fn gaussian(scale: f64) -> Result<Self> {
        ContinuousFamily::gaussian(scale).map(Law::Continuous)
    }

    pub fn uniform(scale: f64) -> Result<Self> {
        ContinuousFamily::uniform(scale).map(Law::Continuous)
    }

    pub fn gamma(shape: f64, scale: f64) -> Result<Self> {
        ContinuousFamily::gamma(shape, scale).map(Law::Continuous)
    }

    pub fn exponential(scale: f64) -> Result<Self> {
        ContinuousFamily::exponential(scale).map(Law::Continuous)
    }

    pub fn laplace(scale: f64) -> Result<Self> {
        ContinuousFamily::laplace(scale).map(Law::Continuous)
    }

    pub fn student(dof: f64, scale: f64) -> Result<Self> {
        ContinuousFamily::student(dof, scale).map(Law::Continuous)
    }

    pub fn cauchy(scale: f64) -> Result<Self> {
        ContinuousFamily::cauchy(scale).map(Law::Continuous)
    }

    pub fn binomial(trials: u64, prob: f64) -> Result<Self> {
        DiscreteLaw::binomial(trials, prob).map(Law::Discrete)
    }

    pub fn poisson(rate: f64) -> Result<Self> {
        DiscreteLaw::poisson(rate).map(Law::Discrete)
    }

    pub fn discrete_uniform(points: u64, width: f64) -> Result<Self> {
        DiscreteLaw::discrete_uniform(points, width).map(Law::Discrete)
    }

    pub fn degenerate(at: f64) -> Result<Self> {
        DiscreteLaw::degenerate(at).map(Law::Discrete)
    }

    pub fn mixture(components: Vec<(f64, Law)>) -> Result<Self> {
        MixtureLaw::new(components).map(Law::Mixture)
    }

    /// `scale·X + shift`.
    pub fn affine(self, scale: f64, shift: f64) -> Result<Self> {
        AffineLaw::new(self, scale, shift).map(Law::Affine)
    }

    /// Centered and scaled to unit variance.
    pub fn standardized(self) -> Result<Self> {
        let mean = self.mean().ok_or(Error::NoVariance)?;
        let sd = self.std_dev().ok_or(Error::NoVariance)?;
        if !(sd > 0.0) {
            return Err(Error::DegenerateLaw);
        }
        self.affine(1.0 / sd, -mean / sd)
    }

    /// The atoms of a purely discrete law (after any affine maps).
    pub fn atoms(&self) -> Option<&DiscreteLaw> {
        match self {
            Law::Discrete(d) => Some(d),
            Law::Affine(a) => a.mapped.as_ref(),
            _ => None,
        }
    }

    pub fn is_discrete(&self) -> bool {
        self.atoms().is_some()
    }

    /// Underlying family plus the composed affine map, for laws with a
    /// density.
    pub fn continuous_parts(&self) -> Option<(&ContinuousFamily, f64, f64)> {
        match self {
            Law::Continuous(f) => Some((f, 1.0, 0.0)),
            Law::Affine(a) => {
                let (family, scale, shift) = a.base.continuous_parts()?;
                Some((family, a.scale * scale, a.scale * shift + a.shift))
            }
            _ => None,
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.continuous_parts().is_some()
    }

    /// True for continuous families, their affine images and mixtures made
    /// only of such laws.
    pub fn has_density(&self) -> bool {
        match self {
            Law::Continuous(_) => true,
            Law::Discrete(_) => false,
            Law::Affine(a) => a.mapped.is_none() && a.base.has_density(),
            Law::Mixture(m) => m.components.iter().all(|(_, l)| l.has_density()),
        }
    }

    /// Density, for laws that have one.
    pub fn pdf(&self, x: f64) -> Option<f64> {
        self.ln_pdf(x).map(f64::exp)
    }

    pub fn ln_pdf(&self, x: f64) -> Option<f64> {
        match self {
            Law::Continuous(f) => Some(f.ln_pdf(x)),
            Law::Affine(a) if a.mapped.is_none() => {
                Some(a.base.ln_pdf((x - a.shift) / a.scale)? - a.scale.ln())
            }
            Law::Mixture(m) => {
                let logs = m
                    .components
                    .iter()
                    .map(|(w, l)| Some(w.ln() + l.ln_pdf(x)?))
                    .collect::<Option<Vec<f64>>>()?;
                let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                if top == f64::NEG_INFINITY {
                    return Some(top);
                }
                Some(top + logs.iter().map(|l| (l - top).exp()).sum::<f64>().ln())
            }
            _ => None,
        }
    }

    /// Right-continuous cdf.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Law::Continuous(f) => f.cdf(x),
            Law::Discrete(d) => d.cdf(x),
            Law::Affine(a) => match &a.mapped {
                Some(d) => d.cdf(x),
                None => a.base.cdf((x - a.shift) / a.scale),
            },
            Law::Mixture(m) => m.cdf(x),
        }
    }

    pub fn mean(&self) -> Option<f64> {
        match self {
            Law::Continuous(f) => f.mean(),
            Law::Discrete(d) => Some(d.mean()),
            Law::Affine(a) => a.base.mean().map(|m| a.scale * m + a.shift),
            Law::Mixture(m) => m.mean(),
        }
    }

    /// Variance, or `None` when the second moment is infinite.
    pub fn variance(&self) -> Option<f64> {
        match self {
            Law::Continuous(f) => f.variance(),
            Law::Discrete(d) => Some(d.variance()),
            Law::Affine(a) => a.base.variance().map(|v| a.scale * a.scale * v),
            Law::Mixture(m) => m.variance(),
        }
    }

    pub fn std_dev(&self) -> Option<f64> {
        match self {
            Law::Continuous(f) => f.std_dev(),
            Law::Affine(a) => a.base.std_dev().map(|s| a.scale * s),
            _ => self.variance().map(f64::sqrt),
        }
    }

    /// The scale parameter locating a continuous law within its type.
    pub fn type_scale(&self) -> Option<f64> {
        self.continuous_parts()
            .map(|(f, scale, _)| f.scale() * scale)
    }

    pub fn is_degenerate(&self) -> bool {
        match self.atoms() {
            Some(d) => d.is_degenerate(),
            None => false,
        }
    }
}
