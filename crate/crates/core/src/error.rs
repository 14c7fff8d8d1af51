use thiserror::Error;

/// Errors produced by grid construction, curve sampling and the reference solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("non-finite ordinate at node {0}")]
    NonFinite(usize),
    #[error("x = {x} outside domain [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },
    #[error("sampler domain: {0}")]
    SamplerDomain(String),
    #[error("inverted bounds at node {0}")]
    InvertedBounds(usize),
    #[error("no cycloid arc: {0}")]
    NoCycloidArc(String),
    #[error("no Newton profile: {0}")]
    NoNewtonProfile(String),
    #[error("quadrature did not converge on [{a}, {b}]")]
    Quadrature { a: f64, b: f64 },
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
