//! Assembly of the per-layer density and vorticity forces, term by term.

use dynamics::{DynamicsError, LayerChainTrajectory};
use fields::{
    cutoff_jet, layer_fields, velocity_of_past_layers, vorticity_gradient_of_past_layers, wave_s,
    Chart,
};
use odeint::gauss_legendre_16;

/// Density-force breakdown at one (n, t, x): f_ρ is the exact sum of the
/// four named terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct DensityForce {
    pub time_derivative: f64,
    pub transport: f64,
    pub old_transport: f64,
    pub quadratic: f64,
    pub f_rho: f64,
}

/// Vorticity-force breakdown at one (n, t, x).
#[derive(Debug, Clone, Copy, Default)]
pub struct VorticityForce {
    pub tau: f64,
    pub transport: f64,
    pub old_transport: f64,
    pub quadratic: f64,
    pub f_omega: f64,
}

/// Taylor remainder of the background velocity at a layer-n chart point:
/// W = Ũ⁽ⁿ⁻¹⁾(t,x̃) − Ũ⁽ⁿ⁻¹⁾(t,0) − ∇U(0)·(x̃₁/aₙ, x̃₂/bₙ), by direct
/// subtraction.
pub fn taylor_remainder(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    x_tilde: [f64; 2],
) -> Result<[f64; 2], DynamicsError> {
    if n == 1 {
        return Ok([0.0, 0.0]);
    }
    let at_x = velocity_of_past_layers(traj, n, t, x_tilde)?;
    let at_0 = velocity_of_past_layers(traj, n, t, [0.0, 0.0])?;
    let dx = [x_tilde[0] / traj.a(n, t)?, x_tilde[1] / traj.b(n, t)?];
    let mut w = [0.0; 2];
    for i in 0..2 {
        w[i] = at_x.u[i] - at_0.u[i] - at_0.j_at_0[i][0] * dx[0] - at_0.j_at_0[i][1] * dx[1];
    }
    Ok(w)
}

/// The same remainder through the integral form
/// Wᵢ = Σⱼₖ xⱼxₖ ∫₀¹ (1−s) ∂ⱼₖUᵢ(s·x̃) ds, used as a cross-check oracle.
pub fn taylor_remainder_integral(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    x_tilde: [f64; 2],
) -> Result<[f64; 2], DynamicsError> {
    if n == 1 {
        return Ok([0.0, 0.0]);
    }
    let dx = [x_tilde[0] / traj.a(n, t)?, x_tilde[1] / traj.b(n, t)?];
    let mut w = [0.0; 2];
    for i in 0..2 {
        w[i] = gauss_legendre_16(
            &mut |s: f64| {
                let p = velocity_of_past_layers(traj, n, t, [s * x_tilde[0], s * x_tilde[1]])
                    .expect("past-layer evaluation inside the window");
                (1.0 - s)
                    * (p.d2[i][0] * dx[0] * dx[0]
                        + 2.0 * p.d2[i][1] * dx[0] * dx[1]
                        + p.d2[i][2] * dx[1] * dx[1])
            },
            0.0,
            1.0,
        );
    }
    Ok(w)
}

/// Density force of layer n at time t and physical point x.
///
/// f_ρ = ∂ₜρ̃ + W·∇ρ + 0 + ũ·∇ρ; the old-transport term vanishes
/// identically because no two density layers are simultaneously active.
pub fn density_force(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    x: [f64; 2],
) -> Result<DensityForce, DynamicsError> {
    let sched = traj.schedule();
    if t <= sched.t_n(n) {
        return Ok(DensityForce::default());
    }
    let chart = Chart::from_trajectory(traj, n, t)?;
    let tilde = chart.inverse(x);
    let sample = layer_fields(traj, n, t, x)?;

    let lambda = sched.lambda_n(n);
    let s1 = wave_s(lambda, tilde[0]);
    let t2 = fields::wave_t(lambda, tilde[1]);
    let time_derivative =
        -sched.z_n(n) * traj.ramp(n).dh_dt(t) / traj.h_total(n) * s1.0[0] * t2.0[0];

    let w = taylor_remainder(traj, n, t, tilde)?;
    let transport = w[0] * sample.grad_rho[0] + w[1] * sample.grad_rho[1];
    let quadratic = sample.u[0] * sample.grad_rho[0] + sample.u[1] * sample.grad_rho[1];
    let old_transport = 0.0;

    Ok(DensityForce {
        time_derivative,
        transport,
        old_transport,
        quadratic,
        f_rho: time_derivative + transport + old_transport + quadratic,
    })
}

/// Vorticity force of layer n at time t and physical point x.
///
/// f_ω = τ + W·∇ω + ũ·Π + ũ·∇ω, with τ = ∂ₜω̃ − ∂ₓ₂ρ̃ assembled so that the
/// zeroth-order-in-λₙ terms never appear: the surviving expression is
///   τ = −d/dt[Ba²]·(λ²φ₁''s₁ + 2λφ₁'c₁)φ₂s₂
///       −d/dt[Bb²]·φ₁s₁(λ²φ₂''s₂ + 2λφ₂'c₂)
///       +λ·d/dt[B(a²+b²)]·φ₁φ₂' s₁c₂
/// where φᵢ = φ(λx̃ᵢ), s/c are plain sines and cosines.
pub fn vorticity_force(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    x: [f64; 2],
) -> Result<VorticityForce, DynamicsError> {
    let sched = traj.schedule();
    if t <= sched.t_n(n) {
        return Ok(VorticityForce::default());
    }
    let chart = Chart::from_trajectory(traj, n, t)?;
    let tilde = chart.inverse(x);
    let sample = layer_fields(traj, n, t, x)?;
    let d = traj.amplitude_time_derivatives(n, t)?;

    let lambda = sched.lambda_n(n);
    let p1 = cutoff_jet(lambda * tilde[0]);
    let p2 = cutoff_jet(lambda * tilde[1]);
    let (sin1, cos1) = tilde[0].sin_cos();
    let (sin2, cos2) = tilde[1].sin_cos();
    let tau = -d.d_a2
        * (lambda * lambda * p1.0[2] * sin1 + 2.0 * lambda * p1.0[1] * cos1)
        * p2.0[0]
        * sin2
        - d.d_b2
            * p1.0[0]
            * sin1
            * (lambda * lambda * p2.0[2] * sin2 + 2.0 * lambda * p2.0[1] * cos2)
        + lambda * d.d_sum * p1.0[0] * p2.0[1] * sin1 * cos2;

    let w = taylor_remainder(traj, n, t, tilde)?;
    let transport = w[0] * sample.grad_omega[0] + w[1] * sample.grad_omega[1];
    let pi = vorticity_gradient_of_past_layers(traj, n, t, tilde)?;
    let old_transport = sample.u[0] * pi[0] + sample.u[1] * pi[1];
    let quadratic = sample.u[0] * sample.grad_omega[0] + sample.u[1] * sample.grad_omega[1];

    Ok(VorticityForce {
        tau,
        transport,
        old_transport,
        quadratic,
        f_omega: tau + transport + old_transport + quadratic,
    })
}
