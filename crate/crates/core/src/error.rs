use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid side lengths: {0}")]
    InvalidSides(String),
    #[error("no cyclic polygon with these side lengths")]
    NotRealizable,
    #[error("radius diverges: side lengths are horocyclic")]
    Horocyclic,
    #[error("radius diverges: side lengths are numerically horocyclic (J > {0})")]
    NumericallyHorocyclic(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("root finder failed to converge after {0} iterations")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
