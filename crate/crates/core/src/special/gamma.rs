use std::f64::consts::PI;

use super::normal::std_normal_quantile;
use super::roots::solve_increasing;
use super::{SpecialValue, MAX_SERIES_TERMS};
use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// Above this the Stirling series is more accurate than Lanczos.
const STIRLING_CUTOFF: f64 = 15.0;

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("ln_gamma argument", x));
    }
    Ok(ln_gamma_unchecked(x))
}

pub(crate) fn ln_gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (PI / (PI * x).sin()).ln() - ln_gamma_unchecked(1.0 - x);
    }
    if x >= STIRLING_CUTOFF {
        return stirling_ln_gamma(x);
    }
    let z = x - 1.0;
    let mut sum = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        sum += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + sum.ln()
}

fn stirling_ln_gamma(x: f64) -> f64 {
    (x - 0.5) * x.ln() - x + LN_SQRT_2PI + stirling_correction(x)
}

fn stirling_correction(x: f64) -> f64 {
    // Bernoulli corrections B_{2k} / (2k (2k-1) x^{2k-1})
    const C: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
        1.0 / 156.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    for c in C.iter().rev() {
        corr = corr * inv2 + c;
    }
    corr * inv
}

/// `λ ln y - y - ln Γ(λ)`, the log of `y` times the gamma density at `y`.
///
/// For large `λ` the three terms are each near `λ ln λ` and cancel, so the
/// Stirling form is expanded around `y = λ` instead.
fn ln_scaled_density(lam: f64, y: f64) -> f64 {
    if lam < STIRLING_CUTOFF {
        return lam * y.ln() - y - ln_gamma_unchecked(lam);
    }
    let d = (y - lam) / lam;
    lam * (d.ln_1p() - d) + 0.5 * lam.ln() - LN_SQRT_2PI - stirling_correction(lam)
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("digamma argument", x));
    }
    Ok(digamma_unchecked(x))
}

pub(crate) fn digamma_unchecked(mut x: f64) -> f64 {
    const SHIFT_TO: f64 = 10.0;
    let mut acc = 0.0;
    while x < SHIFT_TO {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // ψ(x) ~ ln x - 1/(2x) - Σ B_{2k} / (2k x^{2k})
    const B: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32_760.0,
        1.0 / 12.0,
    ];
    let inv2 = 1.0 / (x * x);
    let mut tail = 0.0;
    for b in B.iter().rev() {
        tail = tail * inv2 + b;
    }
    acc + x.ln() - 0.5 / x - tail * inv2
}

fn check_gamma_args(lam: f64, y: f64) -> Result<()> {
    if !(lam > 0.0) || !lam.is_finite() {
        return Err(Error::domain("gamma shape", lam));
    }
    if !(y >= 0.0) {
        return Err(Error::domain("gamma argument", y));
    }
    Ok(())
}

/// Regularized lower incomplete gamma `P(λ, y) = γ(λ, y) / Γ(λ)`.
pub fn reg_gamma_cdf(lam: f64, y: f64) -> Result<f64> {
    check_gamma_args(lam, y)?;
    Ok(reg_gamma_pair(lam, y)?.0)
}

/// Regularized upper incomplete gamma `Q(λ, y) = 1 - P(λ, y)`, computed
/// without cancellation.
pub fn reg_gamma_complement(lam: f64, y: f64) -> Result<f64> {
    check_gamma_args(lam, y)?;
    Ok(reg_gamma_pair(lam, y)?.1)
}

/// Returns `(P, Q)`; whichever is computed directly is accurate to full
/// relative precision.
fn reg_gamma_pair(lam: f64, y: f64) -> Result<(f64, f64)> {
    if y == 0.0 {
        return Ok((0.0, 1.0));
    }
    if y == f64::INFINITY {
        return Ok((1.0, 0.0));
    }
    if y < lam + 1.0 {
        let p = lower_series(lam, y)?;
        Ok((p, 1.0 - p))
    } else {
        let q = upper_fraction(lam, y)?;
        Ok((1.0 - q, q))
    }
}

fn lower_series(lam: f64, y: f64) -> Result<f64> {
    let log_prefactor = ln_scaled_density(lam, y) - lam.ln();
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut a = lam;
    for _ in 0..MAX_SERIES_TERMS {
        a += 1.0;
        term *= y / a;
        sum += term;
        if term < sum * 1e-17 {
            return Ok((log_prefactor.exp() * sum).min(1.0));
        }
    }
    Err(Error::Convergence {
        routine: "incomplete gamma series",
    })
}

fn upper_fraction(lam: f64, y: f64) -> Result<f64> {
    // modified Lentz on the continued fraction for Γ(λ, y)
    const TINY: f64 = 1e-300;
    let log_prefactor = ln_scaled_density(lam, y);
    let mut b = y + 1.0 - lam;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_SERIES_TERMS {
        let an = -(i as f64) * (i as f64 - lam);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok((log_prefactor.exp() * h).min(1.0));
        }
    }
    Err(Error::Convergence {
        routine: "incomplete gamma continued fraction",
    })
}

/// Inverse of [`reg_gamma_cdf`] in its second argument.
pub fn reg_gamma_quantile(lam: f64, p: f64) -> Result<SpecialValue> {
    if !(lam > 0.0) || !lam.is_finite() {
        return Err(Error::domain("gamma shape", lam));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("probability", p));
    }
    let ln_gamma_lam = ln_gamma_unchecked(lam);
    let upper = p > 0.5;
    let target = if upper { 1.0 - p } else { p };

    // work in t = ln y so tiny quantiles of small shapes stay reachable
    let eval = |t: f64| {
        let y = t.exp();
        let (lower, complement) = match reg_gamma_pair(lam, y) {
            Ok(pair) => pair,
            Err(_) => return (f64::NAN, 0.0),
        };
        let density = (lam * t - y - ln_gamma_lam).exp();
        if upper {
            (target - complement, density)
        } else {
            (lower - target, density)
        }
    };
    let (t, step) = solve_increasing(eval, initial_gamma_guess(lam, p).ln(), "gamma quantile")?;
    let (y, bound) = polish_gamma_quantile(lam, upper, target, t.exp(), t.exp() * step);
    Ok(SpecialValue {
        value: y,
        abs_error_bound: bound,
    })
}

/// Newton steps in `y` itself: `exp(t)` only reaches `y` in steps of
/// `y` times an ulp of `t`, which is coarse when `y` is large.
fn polish_gamma_quantile(lam: f64, upper: bool, target: f64, y0: f64, bound0: f64) -> (f64, f64) {
    let correction = |y: f64| {
        let Ok((lower, complement)) = reg_gamma_pair(lam, y) else {
            return f64::NAN;
        };
        let residual = if upper {
            target - complement
        } else {
            lower - target
        };
        residual / (ln_scaled_density(lam, y).exp() / y)
    };
    let (mut y, mut c) = (y0, correction(y0));
    if !c.is_finite() {
        return (y0, bound0);
    }
    for _ in 0..4 {
        let next = y - c;
        if !(next > 0.0) || next == y {
            break;
        }
        let c_next = correction(next);
        // a correction that stops shrinking is evaluation noise
        if !(c_next.abs() < c.abs()) {
            break;
        }
        (y, c) = (next, c_next);
    }
    (y, c.abs().max(f64::EPSILON * y))
}

fn initial_gamma_guess(lam: f64, p: f64) -> f64 {
    // small-y expansion P ≈ y^λ / Γ(λ+1)
    let small = ((p.ln() + ln_gamma_unchecked(lam + 1.0)) / lam).exp();
    if lam < 1.0 {
        return small.max(f64::MIN_POSITIVE);
    }
    // Wilson–Hilferty
    let z = std_normal_quantile(p).map(|v| v.value).unwrap_or(0.0);
    let k = 1.0 / (9.0 * lam);
    let cube = 1.0 - k + z * k.sqrt();
    if cube > 0.0 {
        lam * cube.powi(3)
    } else {
        small.max(f64::MIN_POSITIVE)
    }
}
