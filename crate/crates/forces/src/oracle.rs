//! Independent PDE-residual oracle: time derivatives by Richardson-refined
//! central differences, spatial derivatives analytic.

use dynamics::{DynamicsError, LayerChainTrajectory};
use fields::total_fields;
use odeint::central_diff_richardson;
use thiserror::Error;

use crate::breakdown::{density_force, vorticity_force};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("trajectory query failed: {0}")]
    Dynamics(#[from] DynamicsError),
    #[error(
        "time step unreliable at t={t}: Richardson disagreement {err} vs derivative scale {scale}"
    )]
    StepUnreliable { t: f64, err: f64, scale: f64 },
}

/// Residuals of the two transported equations at one point:
/// res_omega = D_tΩ + U·∇Ω − ∂₂P and res_rho = D_tP + U·∇P.
#[derive(Debug, Clone, Copy)]
pub struct Residual {
    pub res_omega: f64,
    pub res_rho: f64,
}

/// Evaluate the residuals with a central FD step starting at h_t.
pub fn residual_oracle(
    traj: &LayerChainTrajectory,
    n_layers: usize,
    t: f64,
    x: [f64; 2],
    h_t: f64,
) -> Result<Residual, OracleError> {
    let (d_omega, e_omega) = central_diff_richardson(
        |s| total_fields(traj, n_layers, s, x).unwrap().omega,
        t,
        h_t,
        3,
    );
    let (d_rho, e_rho) = central_diff_richardson(
        |s| total_fields(traj, n_layers, s, x).unwrap().rho,
        t,
        h_t,
        3,
    );
    let sample = total_fields(traj, n_layers, t, x)?;

    let res_omega =
        d_omega + sample.u[0] * sample.grad_omega[0] + sample.u[1] * sample.grad_omega[1]
            - sample.grad_rho[1];
    let res_rho = d_rho + sample.u[0] * sample.grad_rho[0] + sample.u[1] * sample.grad_rho[1];

    for (err, scale) in [(e_omega, res_omega.abs()), (e_rho, res_rho.abs())] {
        let scale = scale.max(1e-300);
        if err > 1e-2 * scale && err > 1e-6 {
            return Err(OracleError::StepUnreliable { t, err, scale });
        }
    }
    Ok(Residual { res_omega, res_rho })
}

/// Sum of the assembled layer forces at a point.
pub fn force_sum(
    traj: &LayerChainTrajectory,
    n_layers: usize,
    t: f64,
    x: [f64; 2],
) -> Result<(f64, f64), DynamicsError> {
    let mut f_omega = 0.0;
    let mut f_rho = 0.0;
    for n in 1..=n_layers {
        f_omega += vorticity_force(traj, n, t, x)?.f_omega;
        f_rho += density_force(traj, n, t, x)?.f_rho;
    }
    Ok((f_omega, f_rho))
}
