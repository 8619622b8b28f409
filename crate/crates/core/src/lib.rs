//! Classical and renormalized Shannon entropies for discrete, continuous
//! and mixed laws.
//!
//! The renormalized entropies divide out a dispersion scale taken from the
//! quantile function, so that they are dimensionless, unchanged by affine
//! maps, and continuous across discrete-to-continuous limits:
//!
//! ```
//! use renorm_entropy::{entropy, Law};
//!
//! let gauss = Law::gaussian(3.0)?;
//! assert!((entropy::h_tilde(&gauss)? - 1.11959).abs() < 1e-5);
//!
//! let bin = Law::binomial(1024, 0.5)?;
//! let gap = entropy::H_tilde(&bin)? - entropy::h_tilde(&gauss)?;
//! assert!(gap.abs() < 0.02);
//! # Ok::<(), renorm_entropy::Error>(())
//! ```

// `!(x > 0.0)` is how NaN gets rejected along with the rest
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convergence;
pub mod entropy;
pub mod error;
pub mod figures;
pub mod laws;
pub mod quadrature;
pub mod quantiles;
pub mod special;

pub use error::{Error, Result};
pub use laws::{parse_law, Law};
