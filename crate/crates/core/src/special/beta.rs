use super::gamma::ln_gamma_unchecked;
use super::roots::solve_increasing;
use super::{SpecialValue, MAX_SERIES_TERMS};
use crate::error::{Error, Result};

/// `ln B(α, β) = ln Γ(α) + ln Γ(β) - ln Γ(α+β)`.
pub fn ln_beta(alpha: f64, beta: f64) -> Result<f64> {
    check_shapes(alpha, beta)?;
    Ok(ln_beta_unchecked(alpha, beta))
}

pub(crate) fn ln_beta_unchecked(alpha: f64, beta: f64) -> f64 {
    ln_gamma_unchecked(alpha) + ln_gamma_unchecked(beta) - ln_gamma_unchecked(alpha + beta)
}

fn check_shapes(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("beta shape alpha", alpha));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::domain("beta shape beta", beta));
    }
    Ok(())
}

fn check_unit(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain("beta argument", t));
    }
    Ok(())
}

/// Regularized incomplete beta `I_t(α, β)`.
pub fn reg_beta_cdf(alpha: f64, beta: f64, t: f64) -> Result<f64> {
    check_shapes(alpha, beta)?;
    check_unit(t)?;
    Ok(beta_pair(alpha, beta, t, 1.0 - t)?.0)
}

/// `1 - I_t(α, β)` without cancellation.
pub fn reg_beta_complement(alpha: f64, beta: f64, t: f64) -> Result<f64> {
    check_shapes(alpha, beta)?;
    check_unit(t)?;
    Ok(beta_pair(alpha, beta, t, 1.0 - t)?.1)
}

/// Returns `(I_x(α,β), 1 - I_x(α,β))` given both `x` and `y = 1 - x`.
pub(crate) fn beta_pair(alpha: f64, beta: f64, x: f64, y: f64) -> Result<(f64, f64)> {
    if x <= 0.0 {
        return Ok((0.0, 1.0));
    }
    if y <= 0.0 {
        return Ok((1.0, 0.0));
    }
    if x < (alpha + 1.0) / (alpha + beta + 2.0) {
        let v = fraction(alpha, beta, x, y)?;
        Ok((v, 1.0 - v))
    } else {
        let v = fraction(beta, alpha, y, x)?;
        Ok((1.0 - v, v))
    }
}

/// Continued fraction for `I_x(a, b)`, valid for `x < (a+1)/(a+b+2)`.
fn fraction(a: f64, b: f64, x: f64, y: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let log_front = a * x.ln() + b * y.ln() - ln_beta_unchecked(a, b);
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..MAX_SERIES_TERMS {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok((log_front.exp() * h / a).min(1.0));
        }
    }
    Err(Error::Convergence {
        routine: "incomplete beta continued fraction",
    })
}

/// Inverse of [`reg_beta_cdf`] in `t`.
pub fn reg_beta_quantile(alpha: f64, beta: f64, p: f64) -> Result<SpecialValue> {
    check_shapes(alpha, beta)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::domain("probability", p));
    }
    let ln_b = ln_beta_unchecked(alpha, beta);
    let upper = p > 0.5;
    let target = if upper { 1.0 - p } else { p };

    // logit variable: x = 1/(1+e^-t), 1-x = 1/(1+e^t), both without cancellation
    let eval = |t: f64| {
        let x = 1.0 / (1.0 + (-t).exp());
        let y = 1.0 / (1.0 + t.exp());
        let (lower, complement) = match beta_pair(alpha, beta, x, y) {
            Ok(pair) => pair,
            Err(_) => return (f64::NAN, 0.0),
        };
        let slope = (alpha * x.ln() + beta * y.ln() - ln_b).exp();
        if upper {
            (target - complement, slope)
        } else {
            (lower - target, slope)
        }
    };
    let x0 = initial_beta_guess(alpha, beta, p, ln_b);
    let t0 = x0.ln() - (-x0).ln_1p();
    let (t, step) = solve_increasing(eval, t0, "beta quantile")?;
    let x = 1.0 / (1.0 + (-t).exp());
    Ok(SpecialValue {
        value: x,
        abs_error_bound: step * x * (1.0 - x),
    })
}

fn initial_beta_guess(alpha: f64, beta: f64, p: f64, ln_b: f64) -> f64 {
    let mean = alpha / (alpha + beta);
    // I_x ≈ x^α / (α B) near 0, and symmetrically near 1
    let guess = if p <= 0.5 {
        ((p.ln() + alpha.ln() + ln_b) / alpha).exp().min(mean)
    } else {
        1.0 - (((1.0 - p).ln() + beta.ln() + ln_b) / beta)
            .exp()
            .min(1.0 - mean)
    };
    if guess.is_finite() {
        guess.clamp(1e-300, 1.0 - 1e-16)
    } else {
        mean
    }
}
