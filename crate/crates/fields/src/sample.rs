//! Per-layer and superposed field evaluation in physical coordinates.

use dynamics::{DynamicsError, LayerChainTrajectory};

use crate::chart::Chart;
use crate::cutoff::{wave_s, wave_t, SUPPORT};

/// All fields of interest at one space-time point.
#[derive(Debug, Clone, Copy, Default)]
pub struct FieldSample {
    pub psi: f64,
    pub u: [f64; 2],
    pub omega: f64,
    pub rho: f64,
    /// Physical gradient of ρ (evaluated through the stretched derivatives).
    pub grad_rho: [f64; 2],
    /// Physical gradient of ω.
    pub grad_omega: [f64; 2],
}

impl FieldSample {
    fn accumulate(&mut self, o: &FieldSample) {
        self.psi += o.psi;
        self.u[0] += o.u[0];
        self.u[1] += o.u[1];
        self.omega += o.omega;
        self.rho += o.rho;
        self.grad_rho[0] += o.grad_rho[0];
        self.grad_rho[1] += o.grad_rho[1];
        self.grad_omega[0] += o.grad_omega[0];
        self.grad_omega[1] += o.grad_omega[1];
    }
}

/// Fields of layer n at time t and physical point x. Zero before the layer
/// activates and outside the cutoff support.
pub fn layer_fields(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    x: [f64; 2],
) -> Result<FieldSample, DynamicsError> {
    let sched = traj.schedule();
    if t <= sched.t_n(n) {
        return Ok(FieldSample::default());
    }
    let chart = Chart::from_trajectory(traj, n, t)?;
    let tilde = chart.inverse(x);
    let lambda = sched.lambda_n(n);
    if tilde[0].abs() * lambda >= SUPPORT || tilde[1].abs() * lambda >= SUPPORT {
        return Ok(FieldSample::default());
    }

    let (a, b) = (chart.a, chart.b);
    let big_b = traj.big_b(n, t)?;
    let s1 = wave_s(lambda, tilde[0]);
    let s2 = wave_s(lambda, tilde[1]);
    let t2 = wave_t(lambda, tilde[1]);

    // Stream function B·S(x̃₁)S(x̃₂); u = (b∂₂, −a∂₁)ψ; ω = −(a²∂₁²+b²∂₂²)ψ.
    let psi = big_b * s1.0[0] * s2.0[0];
    let u = [
        big_b * b * s1.0[0] * s2.0[1],
        -big_b * a * s1.0[1] * s2.0[0],
    ];
    let omega = -big_b * (a * a * s1.0[2] * s2.0[0] + b * b * s1.0[0] * s2.0[2]);
    let grad_omega = [
        -big_b * (a * a * a * s1.0[3] * s2.0[0] + a * b * b * s1.0[1] * s2.0[2]),
        -big_b * (a * a * b * s1.0[2] * s2.0[1] + b * b * b * s1.0[0] * s2.0[3]),
    ];

    // Density −(1/bₙ)d/dt[Bₙ(aₙ²+bₙ²)]·φφ sin x̃₁ cos x̃₂, with the time
    // factor reduced to zₙ h⁽ⁿ⁾(t)/Hₙ(1).
    let amp_rho = sched.z_n(n) * traj.ramp(n).h(t) / traj.h_total(n);
    let rho = -amp_rho * s1.0[0] * t2.0[0];
    let grad_rho = [
        -amp_rho * a * s1.0[1] * t2.0[0],
        -amp_rho * b * s1.0[0] * t2.0[1],
    ];

    Ok(FieldSample {
        psi,
        u,
        omega,
        rho,
        grad_rho,
        grad_omega,
    })
}

/// Superposition of layers 1..=N.
pub fn total_fields(
    traj: &LayerChainTrajectory,
    n_layers: usize,
    t: f64,
    x: [f64; 2],
) -> Result<FieldSample, DynamicsError> {
    let mut acc = FieldSample::default();
    for n in 1..=n_layers {
        acc.accumulate(&layer_fields(traj, n, t, x)?);
    }
    Ok(acc)
}

/// A box outside of which the total fields vanish for every t, from the
/// center-confinement bound plus each layer's stretched cutoff radius.
pub fn support_box(traj: &LayerChainTrajectory) -> Result<([f64; 2], [f64; 2]), DynamicsError> {
    let c1 = traj.center1(1, 1.0)?;
    let half = 24.0 * std::f64::consts::PI;
    Ok(([c1 - half, c1 + half], [-SUPPORT, SUPPORT]))
}
