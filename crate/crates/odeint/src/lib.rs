//! Shared numerical kernels for the layer-cascade crates:
//!
//! - adaptive Dormand-Prince 5(4) integration with dense (cubic Hermite) output,
//! - Gauss-Legendre and adaptive quadrature,
//! - Richardson-extrapolated central differences.
//!
//! Everything here is deterministic: no randomness, no global state.

mod diff;
mod quad;
mod rk;

pub use diff::{central_diff, central_diff_richardson};
pub use quad::{adaptive_quad, gauss_legendre_16};
pub use rk::{integrate, DenseSolution, OdeError, OdeOptions};
