//! Layer forces of the forced transport system, assembled exactly as the
//! named term decompositions, plus an independent finite-difference residual
//! oracle to validate them.

mod breakdown;
mod oracle;

pub use breakdown::{
    density_force, taylor_remainder, taylor_remainder_integral, vorticity_force, DensityForce,
    VorticityForce,
};
pub use oracle::{force_sum, residual_oracle, OracleError, Residual};
