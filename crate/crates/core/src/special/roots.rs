use crate::error::{Error, Result};

/// Solves `g(t) = 0` for a nondecreasing `g`, where `eval(t)` returns
/// `(g(t), g'(t))`.
///
/// A bracket is grown outward from `t0` in doubling steps, then refined by
/// Newton steps; a step that leaves the bracket (or a useless derivative)
/// is replaced by bisection. Returns the root and the size of the last
/// step.
pub(crate) fn solve_increasing<F>(eval: F, t0: f64, routine: &'static str) -> Result<(f64, f64)>
where
    F: Fn(f64) -> (f64, f64),
{
    const MAX_EXPANSIONS: usize = 200;
    const MAX_ITERATIONS: usize = 400;

    let (g0, dg0) = eval(t0);
    if g0 == 0.0 {
        return Ok((t0, 0.0));
    }
    if !g0.is_finite() {
        return Err(Error::Convergence { routine });
    }

    // grow the bracket [lo, hi] with g(lo) < 0 < g(hi)
    let (mut lo, mut hi);
    let mut step = 1.0_f64;
    if g0 < 0.0 {
        lo = t0;
        hi = t0 + step;
        let mut found = false;
        for _ in 0..MAX_EXPANSIONS {
            let (g, _) = eval(hi);
            if g == 0.0 {
                return Ok((hi, 0.0));
            }
            if g > 0.0 {
                found = true;
                break;
            }
            lo = hi;
            step *= 2.0;
            hi += step;
        }
        if !found {
            return Err(Error::Convergence { routine });
        }
    } else {
        hi = t0;
        lo = t0 - step;
        let mut found = false;
        for _ in 0..MAX_EXPANSIONS {
            let (g, _) = eval(lo);
            if g == 0.0 {
                return Ok((lo, 0.0));
            }
            if g < 0.0 {
                found = true;
                break;
            }
            hi = lo;
            step *= 2.0;
            lo -= step;
        }
        if !found {
            return Err(Error::Convergence { routine });
        }
    }

    let mut t = if t0 > lo && t0 < hi {
        t0
    } else {
        0.5 * (lo + hi)
    };
    let (mut g, mut dg) = if t == t0 { (g0, dg0) } else { eval(t) };
    for _ in 0..MAX_ITERATIONS {
        if g == 0.0 {
            return Ok((t, 0.0));
        }
        if g < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let newton = t - g / dg;
        let next = if dg > 0.0 && newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        let moved = (next - t).abs();
        let scale = t.abs().max(1.0);
        if moved <= 4.0 * f64::EPSILON * scale || hi - lo <= 4.0 * f64::EPSILON * scale {
            // keep polishing while the Newton correction still shrinks and
            // exceeds an ulp; once it stops shrinking it is evaluation noise
            let (g_next, dg_next) = eval(next);
            let correction = (g_next / dg_next).abs();
            let usable = dg_next > 0.0 && correction.is_finite();
            if usable && correction < moved && correction > f64::EPSILON * scale {
                t = next;
                (g, dg) = (g_next, dg_next);
                continue;
            }
            let bound = if usable { correction.min(moved) } else { moved };
            return Ok((next, bound.max(f64::EPSILON * scale)));
        }
        t = next;
        (g, dg) = eval(t);
    }
    Err(Error::Convergence { routine })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let (t, err) = solve_increasing(|t| (t * t * t - 2.0, 3.0 * t * t), 0.0, "test").unwrap();
        assert!((t - 2f64.cbrt()).abs() < 1e-14, "{t}");
        assert!(err < 1e-13);
    }

    #[test]
    fn survives_flat_derivative() {
        // derivative vanishes at the start; bisection must take over
        let (t, _) = solve_increasing(|t| ((t - 3.0).powi(3), 0.0), 0.0, "test").unwrap();
        assert!((t - 3.0).abs() < 1e-5);
    }

    #[test]
    fn grows_bracket_to_the_left() {
        let (t, _) = solve_increasing(|t| (t + 1000.0, 1.0), 5.0, "test").unwrap();
        assert!((t + 1000.0).abs() < 1e-10);
    }

    #[test]
    fn reports_missing_root() {
        let err = solve_increasing(|_| (-1.0, 0.0), 0.0, "flat").unwrap_err();
        assert_eq!(err, Error::Convergence { routine: "flat" });
    }
}
