//! Globally adaptive Gauss–Kronrod (7/15) integration on finite intervals.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kron += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kron * half, ((kron - gauss) * half).abs())
}

/// Integrates `f` over `[a, b]`, starting from the sub-intervals given by
/// `breaks` (sorted interior points; points outside `(a, b)` are ignored),
/// until the summed error estimate drops below `abs_tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, breaks: &[f64], abs_tol: f64) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite() && a <= b) {
        return Err(Error::domain("integration bounds", b - a));
    }
    let mut nodes = vec![a];
    nodes.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    nodes.push(b);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    for w in nodes.windows(2) {
        let (value, error) = kronrod(&f, w[0], w[1]);
        total_err += error;
        heap.push(Piece {
            a: w[0],
            b: w[1],
            value,
            error,
        });
    }

    while total_err > abs_tol {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Convergence {
                routine: "adaptive quadrature",
            });
        }
        let worst = heap.pop().expect("at least one interval");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // cannot split further in floating point
            return Err(Error::Convergence {
                routine: "adaptive quadrature",
            });
        }
        let (lv, le) = kronrod(&f, worst.a, mid);
        let (rv, re) = kronrod(&f, mid, worst.b);
        total_err += le + re - worst.error;
        heap.push(Piece {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Piece {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
    }

    // re-sum to shed drift from the running updates
    let pieces = heap.into_vec();
    Ok(Integral {
        value: pieces.iter().map(|p| p.value).sum(),
        error_estimate: pieces.iter().map(|p| p.error).sum(),
        intervals: pieces.len(),
    })
}
