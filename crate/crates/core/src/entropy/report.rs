use std::collections::BTreeMap;

use serde::Serialize;

use super::{differential_h, h_bar, h_hat, h_tilde, shannon_h, H_tilde};
use crate::error::{Error, Result};
use crate::laws::Law;
use crate::quantiles::rho_tilde;

/// How a reported value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Analytic,
    Quadrature,
    Series,
    Asymptotic,
}

/// Every entropy that applies to a law. Quantities that do not apply, or
/// could not be computed, are `None`; the first failure is kept in
/// `error`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyReport {
    pub law: String,
    #[serde(rename = "H")]
    pub shannon: Option<f64>,
    pub h: Option<f64>,
    #[serde(rename = "H_tilde")]
    pub shannon_tilde: Option<f64>,
    pub h_tilde: Option<f64>,
    pub h_hat: Option<f64>,
    pub h_bar: Option<f64>,
    pub rho_tilde: Option<f64>,
    pub provenance: BTreeMap<&'static str, Provenance>,
    /// Stable name of the first error met, such as `NoVariance`.
    pub error: Option<&'static str>,
    #[serde(skip)]
    pub failure: Option<Error>,
}

impl EntropyReport {
    pub fn new(law: &Law) -> Self {
        let mut report = EntropyReport {
            law: law.to_string(),
            shannon: None,
            h: None,
            shannon_tilde: None,
            h_tilde: None,
            h_hat: None,
            h_bar: None,
            rho_tilde: None,
            provenance: BTreeMap::new(),
            error: None,
            failure: None,
        };
        if law.is_discrete() {
            report.shannon = report.record("H", Provenance::Series, shannon_h(law));
            report.rho_tilde = report.keep(rho_tilde(law));
            if report.rho_tilde.is_some() {
                report.shannon_tilde = report.record("H_tilde", Provenance::Series, H_tilde(law));
            }
        } else if law.has_density() {
            let source = if law.is_continuous() {
                Provenance::Analytic
            } else {
                Provenance::Quadrature
            };
            report.h = report.record("h", source, differential_h(law));
            report.rho_tilde = report.keep(rho_tilde(law));
            report.h_tilde = report.record("h_tilde", source, h_tilde(law));
            if law.is_continuous() {
                report.h_bar = report.record("h_bar", source, h_bar(law));
            }
            report.h_hat = report.record("h_hat", source, h_hat(law));
        } else {
            report.rho_tilde = report.keep(rho_tilde(law));
        }
        report
    }

    fn keep(&mut self, value: Result<f64>) -> Option<f64> {
        match value {
            Ok(v) => Some(v),
            Err(e) => {
                if self.failure.is_none() {
                    self.error = Some(e.name());
                    self.failure = Some(e);
                }
                None
            }
        }
    }

    fn record(&mut self, key: &'static str, source: Provenance, value: Result<f64>) -> Option<f64> {
        let v = self.keep(value)?;
        self.provenance.insert(key, source);
        Some(v)
    }
}
