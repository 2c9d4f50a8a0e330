//! Numerical checks behind the mode-stability argument for the Riemannian
//! Kerr and Taub-bolt gravitational instantons.
//!
//! The closed-form geometry is written once against [`Real`] and evaluated on
//! `f64`, hyper-dual numbers (exact first and second derivatives) and
//! truncated power series (Frobenius expansions).

pub mod angular;
pub mod geometry;
pub mod np_formalism;
pub mod numerics;
pub mod radial;
pub mod separation;
pub mod stability;

pub use geometry::{Background, BackgroundKind, ChartPoint};
pub use num_complex::Complex;
pub use numerics::Real;

pub type HyperDual64 = numerics::HyperDual<f64>;
pub type HyperDual32 = numerics::HyperDual<f32>;
pub type Complex64 = Complex<f64>;
pub type IntegratorConfig64 = numerics::IntegratorConfig<f64>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("integration failed at x = {location}: {reason}")]
    Integration { location: f64, reason: String },
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("spin-coefficient extraction rejected, fit residual {0:e}")]
    Extraction(f64),
    #[error("eigen solver did not converge, achieved residual {0:e}")]
    NonConvergence(f64),
    #[error("mode off lattice: {0}")]
    OffLattice(String),
    #[error("logarithmic Frobenius case requested: {0}")]
    LogarithmicCase(String),
    #[error("fit failure: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
