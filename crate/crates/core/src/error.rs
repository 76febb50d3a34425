use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the hypothesis of the requested family or theorem.
    #[error("domain error: {requirement} (got {got})")]
    Domain { requirement: String, got: String },

    #[error("unsupported family `{family}` for {what}")]
    UnsupportedFamily { family: String, what: String },

    #[error("series terms do not start decreasing within {order} terms at z = {z}")]
    NonConvergent { z: f64, order: usize },

    #[error("requested {requested} power sums but only {available} coefficients are available")]
    InsufficientOrder { requested: usize, available: usize },

    #[error(
        "power sum S_{k} = {value} is not positive; the series does not have only positive zeros"
    )]
    NonPositiveSum { k: usize, value: f64 },

    #[error("no sign change found on (0, {limit}]")]
    NoZeroFound { limit: f64 },

    #[error("evaluation error {bound:e} swamps |f| = {value:e} at z = {z}")]
    PrecisionExhausted { z: f64, value: f64, bound: f64 },

    #[error("denominator |{modulus:e}| within 10x its error bound {bound:e} at z = {z}")]
    PoleTooClose { z: String, modulus: f64, bound: f64 },

    #[error("usage: {0}")]
    Usage(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(requirement: impl Into<String>, got: impl std::fmt::Display) -> Self {
        Error::Domain {
            requirement: requirement.into(),
            got: got.to_string(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
