//! Sequences of discrete laws converging weakly to a continuous law.
//!
//! Along each sequence the Shannon entropy `H` grows without bound while
//! `H̃` is expected to settle on `h̃` of the limit law.

use serde::Serialize;

use crate::entropy::{h_tilde, poisson_h_exact, shannon_h, H_tilde};
use crate::error::{Error, Result};
use crate::laws::Law;
use crate::special::ln_gamma;

pub const DEFAULT_NS: [u64; 7] = [16, 32, 64, 128, 256, 512, 1024];
pub const DEFAULT_RATES: [f64; 7] = [4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct TracePoint {
    /// `n` or `λ`.
    pub index: f64,
    pub H: f64,
    pub H_tilde: f64,
    /// `H̃` of the law centered and scaled to unit variance.
    pub H_tilde_standardized: f64,
    /// `|H̃ − target|`.
    pub gap: f64,
    /// `H` by a second, independent route.
    pub H_check: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    pub label: String,
    /// `h̃` of the limit law.
    pub target: f64,
    pub points: Vec<TracePoint>,
}

impl ConvergenceTrace {
    pub fn final_gap(&self) -> Option<f64> {
        self.points.last().map(|p| p.gap)
    }

    /// Largest `|H̃* − H̃|` over the trace.
    pub fn standardization_defect(&self) -> f64 {
        self.points
            .iter()
            .map(|p| (p.H_tilde_standardized - p.H_tilde).abs())
            .fold(0.0, f64::max)
    }

    /// Largest disagreement between the two routes to `H`.
    pub fn cross_check_defect(&self) -> f64 {
        self.points
            .iter()
            .map(|p| (p.H - p.H_check).abs())
            .fold(0.0, f64::max)
    }

    /// Whether gaps never grow from the second point on, allowing `slack`.
    pub fn gaps_nonincreasing(&self, slack: f64) -> bool {
        self.points
            .iter()
            .skip(1)
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[1].gap <= w[0].gap + slack)
    }
}

fn point(index: f64, law: Law, h: f64, h_check: f64, target: f64) -> Result<TracePoint> {
    let tilde = H_tilde(&law)?;
    let standardized = H_tilde(&law.standardized()?)?;
    Ok(TracePoint {
        index,
        H: h,
        H_tilde: tilde,
        H_tilde_standardized: standardized,
        gap: (tilde - target).abs(),
        H_check: h_check,
    })
}

fn check_increasing<T: PartialOrd + Copy + Into<f64>>(what: &'static str, xs: &[T]) -> Result<()> {
    if xs.is_empty() {
        return Err(Error::InvalidLaw(format!("{what} grid is empty")));
    }
    if let Some(w) = xs.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::domain(what, w[1].into()));
    }
    Ok(())
}

fn gaussian_target() -> Result<f64> {
    h_tilde(&Law::gaussian(1.0)?)
}

/// Binomial entropy summed from `ln Γ` log-masses, independent of the
/// recurrence that builds the law.
pub fn binomial_h_log_gamma(trials: u64, prob: f64) -> Result<f64> {
    let n = trials as f64;
    let ln_n_fact = ln_gamma(n + 1.0)?;
    let (lp, lq) = (prob.ln(), (-prob).ln_1p());
    let mut h = 0.0;
    for k in 0..=trials {
        let k = k as f64;
        let l = ln_n_fact - ln_gamma(k + 1.0)? - ln_gamma(n - k + 1.0)? + k * lp + (n - k) * lq;
        h -= l.exp() * l;
    }
    Ok(h)
}

/// `Bin(n, p)` for each `n`, against `h̃` of the Gaussian.
pub fn trace_binomial(prob: f64, ns: &[u64]) -> Result<ConvergenceTrace> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::domain("binomial probability", prob));
    }
    let as_f64: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    check_increasing("binomial trials", &as_f64)?;
    if ns[0] == 0 {
        return Err(Error::domain("binomial trials", 0.0));
    }
    let target = gaussian_target()?;
    let points = ns
        .iter()
        .map(|&n| {
            let law = Law::binomial(n, prob)?;
            let h = shannon_h(&law)?;
            point(n as f64, law, h, binomial_h_log_gamma(n, prob)?, target)
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceTrace {
        label: format!("binomial p={prob}"),
        target,
        points,
    })
}

/// `Poisson(λ)` for each `λ`, against `h̃` of the Gaussian. `H` comes from
/// the exact series; the truncated-law sum is kept as the check.
pub fn trace_poisson(rates: &[f64]) -> Result<ConvergenceTrace> {
    check_increasing("poisson rate", rates)?;
    if !(rates[0] > 0.0) {
        return Err(Error::domain("poisson rate", rates[0]));
    }
    let target = gaussian_target()?;
    let points = rates
        .iter()
        .map(|&rate| {
            let law = Law::poisson(rate)?;
            let check = shannon_h(&law)?;
            point(rate, law, poisson_h_exact(rate)?, check, target)
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceTrace {
        label: "poisson".into(),
        target,
        points,
    })
}

/// `n` equal atoms on `(0, a]`, against `h̃` of the uniform law.
pub fn trace_discrete_uniform(width: f64, ns: &[u64]) -> Result<ConvergenceTrace> {
    let as_f64: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    check_increasing("discrete uniform points", &as_f64)?;
    if ns[0] < 4 {
        return Err(Error::domain("discrete uniform points", ns[0] as f64));
    }
    let target = h_tilde(&Law::uniform(width)?)?;
    let points = ns
        .iter()
        .map(|&n| {
            let law = Law::discrete_uniform(n, width)?;
            let h = shannon_h(&law)?;
            point(n as f64, law, h, (n as f64).ln(), target)
        })
        .collect::<Result<_>>()?;
    Ok(ConvergenceTrace {
        label: format!("duniform a={width}"),
        target,
        points,
    })
}
