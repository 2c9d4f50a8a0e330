//! Forward-mode differentiation, adaptive ODE integration and quadrature.

mod hyperdual;
mod ode;
mod quad;
mod scalar;
mod taylor;

pub use hyperdual::{derive2, hessian, jet2, HyperDual};
pub use ode::{ode_solve, IntegratorConfig, Method, Trajectory};
pub use quad::quad;
pub use scalar::Real;
pub use taylor::TaylorSeries;
