//! Quantile functions, interquantile ranges and the renormalization scale
//! `ρ̃`.
//!
//! `Q(p) = inf{x : p ≤ F(x)}` throughout, so at a jump of the cdf the
//! quantile takes the atom and on a flat stretch it takes the left end.

use crate::error::{Error, Result};
use crate::laws::discrete::upper_quantile_with;
use crate::laws::{DiscreteLaw, Law, MixtureLaw};

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::domain("probability", p))
    }
}

/// The generalized inverse of the cdf.
pub fn quantile(law: &Law, p: f64) -> Result<f64> {
    check_probability(p)?;
    if let Some(atoms) = law.atoms() {
        return atoms.quantile(p);
    }
    if let Some((family, scale, shift)) = law.continuous_parts() {
        return Ok(scale * family.quantile(p)? + shift);
    }
    match law {
        Law::Affine(a) => Ok(a.scale() * quantile(a.base(), p)? + a.shift()),
        Law::Mixture(m) => mixture_quantile(m, p),
        _ => unreachable!("discrete and continuous laws handled above"),
    }
}

/// `Q(1 − p)`, avoiding the rounding of `1 − p` where the law allows it.
fn upper_quantile(law: &Law, p: f64) -> Result<f64> {
    match law.atoms() {
        Some(atoms) => atoms.upper_quantile(p),
        None => quantile(law, 1.0 - p),
    }
}

/// Bisection on the mixture cdf. The answer lies between the smallest and
/// largest component quantiles.
fn mixture_quantile(m: &MixtureLaw, p: f64) -> Result<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (_, law) in m.components() {
        let q = quantile(law, p)?;
        lo = lo.min(q);
        hi = hi.max(q);
    }
    if m.cdf(lo) >= p {
        return Ok(lo);
    }
    // invariant: F(lo) < p <= F(hi)
    loop {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            return Ok(hi);
        }
        if m.cdf(mid) >= p {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Interquantile range `ρ(p) = Q(1 − p) − Q(p)` for `0 < p < 1/2`.
pub fn iqnr(law: &Law, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 0.5) {
        return Err(Error::domain("probability below 1/2", p));
    }
    Ok((upper_quantile(law, p)? - quantile(law, p)?).max(0.0))
}

/// Interquartile range `ρ(1/4)`.
pub fn iqrr(law: &Law) -> Result<f64> {
    iqnr(law, 0.25)
}

/// The renormalization scale: the interquartile range of a continuous law,
/// the smallest nonzero `ρ(p)` over `p ∈ (0, 1/4]` for a discrete one, and
/// the convex combination rule for a discrete/continuous mixture. A
/// mixture of continuous laws is itself continuous.
pub fn rho_tilde(law: &Law) -> Result<f64> {
    if let Some(atoms) = law.atoms() {
        return rho_tilde_discrete(atoms);
    }
    if law.has_density() {
        let r = iqrr(law)?;
        return if r > 0.0 {
            Ok(r)
        } else {
            Err(Error::DegenerateLaw)
        };
    }
    match law {
        Law::Affine(a) => Ok(a.scale() * rho_tilde(a.base())?),
        Law::Mixture(m) => rho_tilde_mixture(m),
        _ => unreachable!("discrete and continuous laws handled above"),
    }
}

/// `ρ` is constant between consecutive points of `{c_k} ∪ {1 − c_k}`, and
/// a piece can shrink to a single point where `c_k = 1 − c_j`. Evaluating
/// at every such point and between each neighbouring pair covers all
/// values `ρ` takes.
pub fn rho_tilde_discrete(law: &DiscreteLaw) -> Result<f64> {
    if law.is_degenerate() {
        return Err(Error::DegenerateLaw);
    }
    let support = law.support();
    let cumulative = law.cumulative();
    let tails = law.upper_tails();
    let mut cuts: Vec<f64> = cumulative
        .iter()
        .chain(&tails)
        .copied()
        .filter(|&c| c > 0.0 && c < 0.25)
        .collect();
    cuts.push(0.25);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let rho = |p: f64| {
        let idx = cumulative
            .partition_point(|&c| c < p)
            .min(support.len() - 1);
        upper_quantile_with(support, &tails, p) - support[idx]
    };
    let mut best = f64::INFINITY;
    let mut prev = 0.0;
    for &cut in &cuts {
        for p in [0.5 * (prev + cut), cut] {
            let r = rho(p);
            if r > 0.0 && r < best {
                best = r;
            }
        }
        prev = cut;
    }
    if best.is_finite() {
        Ok(best)
    } else {
        Err(Error::DegenerateLaw)
    }
}

/// `κ = q·ρ̃_d + (1 − q)·ρ̃_c` for a mixture of one discrete law (weight `q`)
/// and one continuous law. A degenerate discrete part contributes zero.
pub fn rho_tilde_mixture(mix: &MixtureLaw) -> Result<f64> {
    let parts = mix.components();
    let (discrete, continuous) = match parts {
        [a, b] if a.1.is_discrete() && b.1.has_density() => (a, b),
        [a, b] if b.1.is_discrete() && a.1.has_density() => (b, a),
        _ => {
            return Err(Error::MixtureStructure(
                "expected one discrete and one continuous component".into(),
            ))
        }
    };
    let (q, atoms) = (discrete.0, discrete.1.atoms().expect("checked discrete"));
    let rho_d = if atoms.is_degenerate() {
        0.0
    } else {
        rho_tilde_discrete(atoms)?
    };
    let rho_c = iqrr(&continuous.1)?;
    if !(rho_c > 0.0) {
        return Err(Error::DegenerateLaw);
    }
    Ok(q * rho_d + continuous.0 * rho_c)
}
