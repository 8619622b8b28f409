//! Special functions backing the law catalog.
//!
//! Everything here is a pure function of its arguments. Forward functions
//! return plain values; inverses go through a bracketed, safeguarded Newton
//! iteration and report the size of their last step as an error bound.

pub(crate) mod beta;
pub(crate) mod gamma;
mod normal;
mod roots;

pub use beta::{ln_beta, reg_beta_cdf, reg_beta_complement, reg_beta_quantile};
pub use gamma::{digamma, ln_gamma, reg_gamma_cdf, reg_gamma_complement, reg_gamma_quantile};
pub use normal::{std_normal_cdf, std_normal_pdf, std_normal_quantile};

use serde::Serialize;

/// A scalar produced by an iterative routine, with the bound it achieved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialValue {
    pub value: f64,
    /// Bound on `|value - exact|`.
    pub abs_error_bound: f64,
}

impl SpecialValue {
    pub(crate) fn exact(value: f64) -> Self {
        SpecialValue {
            value,
            abs_error_bound: 0.0,
        }
    }
}

/// Target accuracy for every routine in this module.
pub const TARGET_TOLERANCE: f64 = 1e-12;

pub(crate) const MAX_SERIES_TERMS: usize = 100_000;
