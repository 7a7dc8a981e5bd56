use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("evaluation failed on a finite-difference stencil: {0}")]
    Evaluation(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),
    #[error("special function error: {0}")]
    SpecialFunction(String),
    #[error("series divergence: {0}")]
    SeriesDivergence(String),
    #[error("no bound region below energy {energy}")]
    NoBoundRegion { energy: f64 },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
