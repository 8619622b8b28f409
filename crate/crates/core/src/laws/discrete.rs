use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::gamma::ln_gamma_unchecked;

/// Poisson laws are cut where the remaining tail mass drops below this.
pub const POISSON_TAIL_MASS: f64 = 1e-15;

const MASS_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum DiscreteKind {
    Binomial {
        trials: u64,
        prob: f64,
    },
    /// Atoms `0..=truncation`.
    Poisson {
        rate: f64,
        truncation: usize,
    },
    /// `points` atoms at `k·width/points`, `k = 1..=points`.
    #[serde(rename = "duniform")]
    DiscreteUniform {
        points: u64,
        width: f64,
    },
    Explicit,
}

/// A law on finitely many points, stored as strictly increasing support,
/// masses and cumulative masses.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLaw {
    support: Vec<f64>,
    masses: Vec<f64>,
    cumulative: Vec<f64>,
    kind: DiscreteKind,
}

impl DiscreteLaw {
    /// A law from explicit atoms. Masses must be nonnegative and sum to one
    /// within `1e-12`; the support must be finite and strictly increasing.
    pub fn explicit(support: Vec<f64>, masses: Vec<f64>) -> Result<Self> {
        if support.is_empty() || support.len() != masses.len() {
            return Err(Error::InvalidLaw(format!(
                "need equally many support points and masses, got {} and {}",
                support.len(),
                masses.len()
            )));
        }
        check_support(&support)?;
        if let Some(&m) = masses.iter().find(|m| !(m.is_finite() && **m >= 0.0)) {
            return Err(Error::InvalidLaw(format!("mass {m} is not a probability")));
        }
        let cumulative = running_sum(&masses);
        let total = *cumulative.last().expect("nonempty");
        if (total - 1.0).abs() > MASS_SUM_TOLERANCE {
            return Err(Error::InvalidLaw(format!("masses sum to {total}, not 1")));
        }
        Ok(DiscreteLaw {
            support,
            masses,
            cumulative,
            kind: DiscreteKind::Explicit,
        })
    }

    /// The law concentrated on a single point.
    pub fn degenerate(at: f64) -> Result<Self> {
        Self::explicit(vec![at], vec![1.0])
    }

    /// Binomial law on `0..=trials`.
    pub fn binomial(trials: u64, prob: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&prob) {
            return Err(Error::InvalidLaw(format!(
                "binomial p must lie in [0, 1], got {prob}"
            )));
        }
        let n = trials as usize;
        let support: Vec<f64> = (0..=n).map(|k| k as f64).collect();
        let masses = if prob == 0.0 || prob == 1.0 {
            let mut m = vec![0.0; n + 1];
            m[if prob == 0.0 { 0 } else { n }] = 1.0;
            m
        } else {
            binomial_masses(trials, prob)
        };
        let cumulative = running_sum(&masses);
        Ok(DiscreteLaw {
            support,
            masses,
            cumulative,
            kind: DiscreteKind::Binomial { trials, prob },
        })
    }

    /// Poisson law truncated at the smallest `K` whose tail mass beyond `K`
    /// is below [`POISSON_TAIL_MASS`]. Masses are not renormalized.
    pub fn poisson(rate: f64) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::InvalidLaw(format!(
                "poisson lam must be positive, got {rate}"
            )));
        }
        let ln_rate = rate.ln();
        let ln_mass = |k: usize| -rate + k as f64 * ln_rate - ln_gamma_unchecked(k as f64 + 1.0);
        // past the mode the masses fall faster than a geometric series with
        // ratio rate/(K+2), which bounds the tail
        let mut truncation = rate.floor() as usize;
        loop {
            let ratio = rate / (truncation as f64 + 2.0);
            let bound = ln_mass(truncation + 1).exp() / (1.0 - ratio);
            if ratio < 1.0 && bound < POISSON_TAIL_MASS {
                break;
            }
            truncation += 1;
        }
        let support: Vec<f64> = (0..=truncation).map(|k| k as f64).collect();
        let masses: Vec<f64> = (0..=truncation).map(|k| ln_mass(k).exp()).collect();
        let cumulative = running_sum(&masses);
        Ok(DiscreteLaw {
            support,
            masses,
            cumulative,
            kind: DiscreteKind::Poisson { rate, truncation },
        })
    }

    /// Equal masses `1/points` at `k·width/points`, `k = 1..=points`.
    pub fn discrete_uniform(points: u64, width: f64) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidLaw("duniform needs n ≥ 1".into()));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidLaw(format!(
                "duniform a must be positive, got {width}"
            )));
        }
        let n = points as f64;
        let support: Vec<f64> = (1..=points).map(|k| k as f64 * width / n).collect();
        check_support(&support)?;
        let masses = vec![1.0 / n; points as usize];
        // exact k/n rather than a running sum
        let cumulative = (1..=points).map(|k| k as f64 / n).collect();
        Ok(DiscreteLaw {
            support,
            masses,
            cumulative,
            kind: DiscreteKind::DiscreteUniform { points, width },
        })
    }

    pub fn support(&self) -> &[f64] {
        &self.support
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn cumulative(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn kind(&self) -> DiscreteKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Number of atoms carrying positive mass.
    pub fn positive_atoms(&self) -> usize {
        self.masses.iter().filter(|&&m| m > 0.0).count()
    }

    pub fn is_degenerate(&self) -> bool {
        self.positive_atoms() < 2
    }

    /// Same masses, support mapped to `scale·x + shift`.
    pub(crate) fn mapped(&self, scale: f64, shift: f64) -> Result<Self> {
        let support: Vec<f64> = self.support.iter().map(|&x| scale * x + shift).collect();
        check_support(&support)?;
        Ok(DiscreteLaw {
            support,
            masses: self.masses.clone(),
            cumulative: self.cumulative.clone(),
            kind: self.kind,
        })
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let idx = self.support.partition_point(|&s| s <= x);
        if idx == 0 {
            0.0
        } else {
            self.cumulative[idx - 1].min(1.0)
        }
    }

    /// `inf{x : p ≤ F(x)}`: the first atom whose cumulative mass reaches `p`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain("probability", p));
        }
        let idx = self.cumulative.partition_point(|&c| c < p);
        Ok(self.support[idx.min(self.support.len() - 1)])
    }

    /// Mass strictly above each atom, summed from the top so that small
    /// tails keep their relative accuracy.
    pub fn upper_tails(&self) -> Vec<f64> {
        if let DiscreteKind::DiscreteUniform { points, .. } = self.kind {
            let n = points as f64;
            return (1..=points).map(|k| (points - k) as f64 / n).collect();
        }
        let mut tails = vec![0.0; self.masses.len()];
        let mut acc = 0.0;
        for (t, m) in tails.iter_mut().zip(&self.masses).rev() {
            *t = acc;
            acc += m;
        }
        tails
    }

    /// `Q(1 − p)`, found from the upper tails so that `1 − p` is never
    /// rounded.
    pub fn upper_quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::domain("probability", p));
        }
        Ok(upper_quantile_with(&self.support, &self.upper_tails(), p))
    }

    pub fn mean(&self) -> f64 {
        match self.kind {
            DiscreteKind::Binomial { trials, prob } => trials as f64 * prob,
            DiscreteKind::Poisson { rate, .. } => rate,
            DiscreteKind::DiscreteUniform { points, width } => {
                width * (points as f64 + 1.0) / (2.0 * points as f64)
            }
            DiscreteKind::Explicit => self.raw_mean(),
        }
    }

    pub fn variance(&self) -> f64 {
        match self.kind {
            DiscreteKind::Binomial { trials, prob } => trials as f64 * prob * (1.0 - prob),
            DiscreteKind::Poisson { rate, .. } => rate,
            DiscreteKind::DiscreteUniform { points, width } => {
                let n = points as f64;
                width * width * (n * n - 1.0) / (12.0 * n * n)
            }
            DiscreteKind::Explicit => self.raw_variance(),
        }
    }

    fn raw_mean(&self) -> f64 {
        self.support
            .iter()
            .zip(&self.masses)
            .map(|(x, p)| x * p)
            .sum()
    }

    fn raw_variance(&self) -> f64 {
        let mean = self.raw_mean();
        self.support
            .iter()
            .zip(&self.masses)
            .map(|(x, p)| p * (x - mean) * (x - mean))
            .sum()
    }
}

/// First atom whose upper tail is at most `p`.
pub(crate) fn upper_quantile_with(support: &[f64], tails: &[f64], p: f64) -> f64 {
    let idx = tails.partition_point(|&t| t > p);
    support[idx.min(support.len() - 1)]
}

fn check_support(support: &[f64]) -> Result<()> {
    if support.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidLaw("support points must be finite".into()));
    }
    if support.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidLaw(
            "support must be strictly increasing".into(),
        ));
    }
    Ok(())
}

fn running_sum(masses: &[f64]) -> Vec<f64> {
    masses
        .iter()
        .scan(0.0, |acc, m| {
            *acc += m;
            Some(*acc)
        })
        .collect()
}

/// Binomial masses from log-space ratios anchored at the mode, normalized
/// by their log-sum; avoids both `n!` overflow and `(1-p)^n` underflow.
fn binomial_masses(trials: u64, prob: f64) -> Vec<f64> {
    let n = trials as usize;
    let log_odds = prob.ln() - (-prob).ln_1p();
    let mode = (((trials + 1) as f64 * prob).floor() as usize).min(n);
    let mut log_weights = vec![0.0; n + 1];
    for k in mode..n {
        log_weights[k + 1] = log_weights[k] + ((n - k) as f64 / (k + 1) as f64).ln() + log_odds;
    }
    for k in (1..=mode).rev() {
        log_weights[k - 1] = log_weights[k] - ((n - k + 1) as f64 / k as f64).ln() - log_odds;
    }
    let total: f64 = log_weights.iter().map(|w| w.exp()).sum();
    let ln_total = total.ln();
    log_weights.iter().map(|w| (w - ln_total).exp()).collect()
}
