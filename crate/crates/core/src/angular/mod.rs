//! The angular problem `𝐒S = 0` on `x = cosθ ∈ [−1, 1]`, solved as a
//! Sturm–Liouville eigenproblem for the separation constant `Λ`.
//!
//! The primary solver factors out the pole behaviour `(1 − x)^{α}(1 + x)^{β}`
//! with `α = |f(1)|/2`, `β = |f(−1)|/2` and expands the rest in orthonormal
//! Jacobi polynomials. Because the reduced potential is a quadratic polynomial,
//! the Galerkin matrix is exact under Gauss–Jacobi quadrature. A cell-centred
//! finite-difference discretization serves as an independent oracle.

mod fd;
mod jacobi;
mod spectral;

pub use fd::{fd_oracle_extrapolated, fd_oracle_spectrum, FD_MIN_CELLS};
pub use jacobi::JacobiBasis;
pub use spectral::{
    angular_eigenfunction, angular_spectrum, endpoint_exponents, AngularEigenpair,
    AngularSolverConfig,
};

#[cfg(test)]
mod tests;
