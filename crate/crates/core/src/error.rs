use thiserror::Error;

/// Errors raised by the exact and numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("isometry has nonzero fixed vectors (rho^2 + rho + 1 != 0); no Eisenstein structure")]
    NotEisenstein,

    #[error("degenerate lattice: Gram matrix is singular")]
    DegenerateLattice,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid branch configuration: {0}")]
    InvalidConfig(String),

    #[error("r = {0} is outside the catalog (even r in 2..=18)")]
    CatalogRange(i64),

    #[error("zero polynomial where a nonzero one is required: {0}")]
    ZeroPolynomial(&'static str),

    #[error("polynomial is not squarefree: {0}")]
    NotSquarefree(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integrand is not finite at x = {x}")]
    IntegrandDomain { x: f64 },

    #[error("quadrature did not converge: last difference {err_estimate:e} after {levels} levels")]
    NotConverged { err_estimate: f64, levels: u32 },

    #[error("Chebyshev model unresolved: trailing coefficient {trailing:e} vs max {max:e}")]
    Unresolved { trailing: f64, max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
