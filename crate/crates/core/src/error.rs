use thiserror::Error;

/// Everything that can go wrong while building a law or evaluating one of
/// its functionals.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{what} out of domain: {value}")]
    Domain { what: &'static str, value: f64 },

    /// A law was built from inconsistent parameters.
    #[error("invalid law: {0}")]
    InvalidLaw(String),

    /// An iterative routine ran out of iterations.
    #[error("{routine} failed to converge")]
    Convergence { routine: &'static str },

    /// The law is concentrated on a single point, so every interquantile
    /// range vanishes.
    #[error("law is degenerate")]
    DegenerateLaw,

    /// The law has no finite second moment.
    #[error("law has no finite variance")]
    NoVariance,

    /// The operation needs a purely discrete law.
    #[error("law is not discrete")]
    NotDiscrete,

    /// The operation needs a law with a density.
    #[error("law is not continuous")]
    NotContinuous,

    /// A mixture does not have the shape the operation expects.
    #[error("unsupported mixture: {0}")]
    MixtureStructure(String),

    /// No closed form is known for this (family, functional) pair.
    #[error("no closed form for {0}")]
    UnsupportedFamily(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    /// Short, stable name used in serialized reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "DomainError",
            Error::InvalidLaw(_) => "InvalidLaw",
            Error::Convergence { .. } => "ConvergenceFailure",
            Error::DegenerateLaw => "DegenerateLaw",
            Error::NoVariance => "NoVariance",
            Error::NotDiscrete => "NotDiscrete",
            Error::NotContinuous => "NotContinuous",
            Error::MixtureStructure(_) => "MixtureStructure",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
