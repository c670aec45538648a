use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("base q = {0} must satisfy 0 < |q| < 1")]
    InvalidBase(Complex64),

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("q-gamma pole: q^(z+{k}) = 1 for z = {z}")]
    GammaPole { z: Complex64, k: usize },

    #[error("series diverges: {0}")]
    Divergent(String),

    #[error("lower parameter {index} hits q^-{k}; the series divides by zero at term {}", k + 1)]
    LowerParameterPole { index: usize, k: usize },

    #[error("series did not reach tolerance within {0} terms")]
    TruncationCap(usize),

    #[error("degenerate denominator: {0}")]
    DegenerateDenominator(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cross-check failed for {what}: |{lhs} - {rhs}| exceeds {bound:e}")]
    CrossCheck {
        what: &'static str,
        lhs: Complex64,
        rhs: Complex64,
        bound: f64,
    },

    #[error("evaluation point {0} is too close to a pole")]
    NearPole(Complex64),

    #[error("no pole of f_k at index (i = {i}, j = {j}) for k = {k}")]
    NoPole { i: usize, j: i64, k: i64 },

    #[error("pole at {0} is not simple")]
    NonSimplePole(Complex64),

    #[error("Vandermonde system is ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),

    #[error("sampled polynomial fails the consistency check: residual {0:e}")]
    Inconsistent(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
