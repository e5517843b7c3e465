//! Special functions and numerical integration backing the closed-form
//! outage expressions: log-gamma, the regularized lower incomplete gamma
//! function (real shape), and an adaptive Gauss-Kronrod integrator.

mod gamma;
mod quad;

pub use gamma::{ln_gamma, reg_lower_gamma, SpecFunError};
pub use quad::{integrate, QuadError, Quadrature, QuadratureSpec};
