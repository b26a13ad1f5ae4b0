use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (defect {defect:.3e} > tolerance {tol:.3e})")]
    NotHermitian { defect: f64, tol: f64 },
    #[error("operator is not odd (defect {0:.3e})")]
    NotOdd(f64),
    #[error("degree-0 chain has no boundary")]
    DegreeZero,
    #[error("degree {n} exceeds summability order {n_max}")]
    DegreeTooHigh { n: usize, n_max: usize },
    #[error("element is not idempotent (residual {0:.3e})")]
    NotIdempotent(f64),
    #[error("negative time t = {0}")]
    NegativeTime(f64),
    #[error("cycle invariant violated: {0}")]
    Invariant(String),
    #[error("ill-separated spectrum: {0}")]
    Spectrum(String),
    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("form has nonzero components outside degree 2")]
    NotTopDegree,
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
