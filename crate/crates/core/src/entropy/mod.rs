//! Classical and renormalized entropies, in nats.
//!
//! | symbol | definition                          | applies to            |
//! |--------|-------------------------------------|-----------------------|
//! | `H`    | `−Σ p ln p`                         | discrete              |
//! | `H̃`    | `H + Σ p_k ln Δx_k − ln ρ̃`          | discrete              |
//! | `h`    | `−∫ f ln f`                         | continuous            |
//! | `h̃`    | `h − ln ρ̃`                          | continuous            |
//! | `ĥ`    | `ln(σ√(2πe)) − h`                   | finite variance       |
//! | `h̄`    | `h − ln a`, `a` the scale parameter | catalog families      |

mod closed_form;
mod report;

pub use closed_form::{catalog_closed_form, family_entropy, Which, LN_SQRT_2PI_E};
pub use report::{EntropyReport, Provenance};

use crate::error::{Error, Result};
use crate::laws::{DiscreteKind, Law};
use crate::quadrature::{integrate, Integral};
use crate::quantiles::{iqrr, quantile, rho_tilde};
use crate::special::ln_gamma;

/// Probability cut from each tail before integrating `−f ln f`.
pub const QUADRATURE_TAIL: f64 = 1e-12;
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

/// Shannon entropy of a discrete law. Zero masses contribute nothing;
/// equal masses give `ln n` exactly.
pub fn shannon_h(law: &Law) -> Result<f64> {
    let atoms = law.atoms().ok_or(Error::NotDiscrete)?;
    if let DiscreteKind::DiscreteUniform { points, .. } = atoms.kind() {
        return Ok((points as f64).ln());
    }
    Ok(shannon_sum(atoms.masses()))
}

/// `−Σ p ln p` over the given masses.
pub fn shannon_sum(masses: &[f64]) -> f64 {
    -masses
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|p| p * p.ln())
        .sum::<f64>()
}

/// Differential entropy: closed form for catalog families and their affine
/// images, quadrature for other laws with a density.
pub fn differential_h(law: &Law) -> Result<f64> {
    if let Some((family, scale, _)) = law.continuous_parts() {
        return Ok(family_entropy(family)? + scale.ln());
    }
    if law.has_density() {
        return differential_h_quadrature(law).map(|i| i.value);
    }
    Err(Error::NotContinuous)
}

/// `−∫ f ln f` over `[Q(ε), Q(1 − ε)]` with breakpoints at a ladder of
/// quantiles, so heavy tails and endpoint singularities get their own
/// intervals.
pub fn differential_h_quadrature(law: &Law) -> Result<Integral> {
    if !law.has_density() {
        return Err(Error::NotContinuous);
    }
    let ladder = [1e-9, 1e-6, 1e-3, 0.05, 0.25, 0.5];
    let mut breaks = Vec::with_capacity(2 * ladder.len());
    for p in ladder {
        breaks.push(quantile(law, p)?);
        breaks.push(quantile(law, 1.0 - p)?);
    }
    let a = quantile(law, QUADRATURE_TAIL)?;
    let b = quantile(law, 1.0 - QUADRATURE_TAIL)?;
    let integrand = |x: f64| {
        let l = law.ln_pdf(x).unwrap_or(f64::NEG_INFINITY);
        if l == f64::NEG_INFINITY {
            0.0
        } else {
            -l.exp() * l
        }
    };
    integrate(integrand, a, b, &breaks, QUADRATURE_TOLERANCE)
}

/// `h − ln ρ̃`, unchanged by every map `a·x + b` with `a > 0`.
pub fn h_tilde(law: &Law) -> Result<f64> {
    if let Some((family, _, _)) = law.continuous_parts() {
        // evaluate on the base family so the affine map cancels exactly
        let base = Law::Continuous(*family);
        return Ok(family_entropy(family)? - iqrr(&base)?.ln());
    }
    if !law.has_density() {
        return Err(Error::NotContinuous);
    }
    Ok(differential_h(law)? - rho_tilde(law)?.ln())
}

/// `ln(σ√(2πe)) − h`: zero for Gaussian laws and positive otherwise.
pub fn h_hat(law: &Law) -> Result<f64> {
    if let Some((family, _, _)) = law.continuous_parts() {
        let sd = family.std_dev().ok_or(Error::NoVariance)?;
        return Ok(sd.ln() + LN_SQRT_2PI_E - family_entropy(family)?);
    }
    if !law.has_density() {
        return Err(Error::NotContinuous);
    }
    let sd = law.std_dev().ok_or(Error::NoVariance)?;
    Ok(sd.ln() + LN_SQRT_2PI_E - differential_h(law)?)
}

/// `h − ln a` with `a` the scale parameter of the family.
pub fn h_bar(law: &Law) -> Result<f64> {
    match law.continuous_parts() {
        Some((family, _, _)) => Ok(family_entropy(family)? - family.scale().ln()),
        None if law.has_density() => Err(Error::UnsupportedFamily(
            "only catalog families carry a scale parameter".into(),
        )),
        None => Err(Error::NotContinuous),
    }
}

/// `H + Σ p_k ln Δx_k − ln ρ̃`, with `Δx_k = x_k − x_{k−1}` and the first
/// gap taken as the smallest of the others.
#[allow(non_snake_case)]
pub fn H_tilde(law: &Law) -> Result<f64> {
    let atoms = law.atoms().ok_or(Error::NotDiscrete)?;
    if atoms.is_degenerate() {
        return Err(Error::DegenerateLaw);
    }
    let support = atoms.support();
    let gaps: Vec<f64> = support.windows(2).map(|w| w[1] - w[0]).collect();
    let first = gaps.iter().copied().fold(f64::INFINITY, f64::min);
    let spacing: f64 = atoms
        .masses()
        .iter()
        .zip(std::iter::once(first).chain(gaps))
        .filter(|(&p, _)| p > 0.0)
        .map(|(p, dx)| p * dx.ln())
        .sum();
    Ok(shannon_h(law)? + spacing - rho_tilde(law)?.ln())
}

/// `ρ(1/4)/σ`, a dimensionless shape index.
pub fn gamma_ratio(law: &Law) -> Result<f64> {
    let sd = law.std_dev().ok_or(Error::NoVariance)?;
    let r = iqrr(law)?;
    if !(sd > 0.0 && r > 0.0) {
        return Err(Error::DegenerateLaw);
    }
    Ok(r / sd)
}

/// Entropy of the (untruncated) Poisson law from the series
/// `λ(1 − ln λ) + e^{−λ} Σ λ^k ln k! / k!`.
pub fn poisson_h_exact(rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::domain("poisson rate", rate));
    }
    let ln_rate = rate.ln();
    let mut sum = 0.0;
    let mut k = 2u32;
    loop {
        let ln_fact = ln_gamma(f64::from(k) + 1.0)?;
        let term = (f64::from(k) * ln_rate - rate - ln_fact).exp() * ln_fact;
        sum += term;
        if f64::from(k) > rate && term <= 1e-16 * sum {
            break;
        }
        k += 1;
        if k > 1_000_000 {
            return Err(Error::Convergence {
                routine: "poisson entropy series",
            });
        }
    }
    Ok(rate * (1.0 - ln_rate) + sum)
}

/// Large-`λ` expansion of the Poisson entropy.
pub fn poisson_h_asymptotic(rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::domain("poisson rate", rate));
    }
    let l = rate;
    Ok(
        0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * l).ln()
            - 1.0 / (12.0 * l)
            - 1.0 / (24.0 * l * l)
            - 19.0 / (360.0 * l * l * l),
    )
}

/// Large-`n` expansion of the binomial entropy.
pub fn binomial_h_asymptotic(trials: u64, prob: f64) -> Result<f64> {
    if trials == 0 {
        return Err(Error::domain("binomial trials", 0.0));
    }
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::domain("binomial probability", prob));
    }
    let v = trials as f64 * prob * (1.0 - prob);
    let pq = prob * (1.0 - prob);
    Ok(
        0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * v).ln()
            + (4.0 * pq - 1.0) / (12.0 * v),
    )
}

/// Closed form for a bare family, if the law is one.
pub fn closed_form_for(law: &Law, which: Which) -> Result<f64> {
    match law.continuous_parts() {
        Some((family, _, _)) => catalog_closed_form(family, which),
        None => Err(Error::UnsupportedFamily(law.to_string())),
    }
}
