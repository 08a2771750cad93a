//! Background (past-layer) velocity and vorticity-gradient evaluation in a
//! given layer's chart, with analytic derivatives for force assembly.

use dynamics::{DynamicsError, LayerChainTrajectory};

use crate::cutoff::wave_s;

/// Background velocity Ũ⁽ⁿ⁻¹⁾ of layers m < n, seen from layer n's chart.
#[derive(Debug, Clone, Copy, Default)]
pub struct PastLayerVelocity {
    /// Velocity at the query point.
    pub u: [f64; 2],
    /// Physical velocity gradient ∂Uᵢ/∂xⱼ at the chart origin.
    pub j_at_0: [[f64; 2]; 2],
    /// Physical second derivatives at the query point, per component the
    /// triple (∂₁₁, ∂₁₂, ∂₂₂).
    pub d2: [[f64; 3]; 2],
}

/// Tilde coordinate of the layer-n chart point inside layer m's chart.
fn relay(
    traj: &LayerChainTrajectory,
    n: usize,
    m: usize,
    t: f64,
    x_tilde: [f64; 2],
) -> Result<[f64; 2], DynamicsError> {
    let sep = traj.center1(n, t)? - traj.center1(m, t)?;
    let (a_m, b_m) = (traj.a(m, t)?, traj.b(m, t)?);
    let (a_n, b_n) = (traj.a(n, t)?, traj.b(n, t)?);
    Ok([
        a_m * sep + (a_m / a_n) * x_tilde[0],
        (b_m / b_n) * x_tilde[1],
    ])
}

/// Ũ⁽ⁿ⁻¹⁾ with analytic derivatives. Empty (all zeros) for n = 1.
pub fn velocity_of_past_layers(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    x_tilde: [f64; 2],
) -> Result<PastLayerVelocity, DynamicsError> {
    let sched = traj.schedule();
    let mut out = PastLayerVelocity::default();
    for m in 1..n {
        let big_b = traj.big_b(m, t)?;
        if big_b == 0.0 {
            continue;
        }
        let (a, b) = (traj.a(m, t)?, traj.b(m, t)?);
        let lambda = sched.lambda_n(m);

        let y = relay(traj, n, m, t, x_tilde)?;
        let s1 = wave_s(lambda, y[0]);
        let s2 = wave_s(lambda, y[1]);
        out.u[0] += big_b * b * s1.0[0] * s2.0[1];
        out.u[1] += -big_b * a * s1.0[1] * s2.0[0];

        // ∂²U₁ and ∂²U₂, physical: each ∂/∂x₁ costs a factor aₘ, each
        // ∂/∂x₂ a factor bₘ.
        out.d2[0][0] += big_b * b * a * a * s1.0[2] * s2.0[1];
        out.d2[0][1] += big_b * b * a * b * s1.0[1] * s2.0[2];
        out.d2[0][2] += big_b * b * b * b * s1.0[0] * s2.0[3];
        out.d2[1][0] += -big_b * a * a * a * s1.0[3] * s2.0[0];
        out.d2[1][1] += -big_b * a * a * b * s1.0[2] * s2.0[1];
        out.d2[1][2] += -big_b * a * b * b * s1.0[1] * s2.0[2];

        // Gradient at the chart origin.
        let y0 = relay(traj, n, m, t, [0.0, 0.0])?;
        let s10 = wave_s(lambda, y0[0]);
        let s20 = wave_s(lambda, y0[1]);
        out.j_at_0[0][0] += big_b * b * a * s10.0[1] * s20.0[1];
        out.j_at_0[0][1] += big_b * b * b * s10.0[0] * s20.0[2];
        out.j_at_0[1][0] += -big_b * a * a * s10.0[2] * s20.0[0];
        out.j_at_0[1][1] += -big_b * a * b * s10.0[1] * s20.0[1];
    }
    Ok(out)
}

/// Physical gradient of the past-layer vorticity Ω⁽ⁿ⁻¹⁾ = Σ_{m<n} ω⁽ᵐ⁾ at a
/// layer-n chart point.
pub fn vorticity_gradient_of_past_layers(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    x_tilde: [f64; 2],
) -> Result<[f64; 2], DynamicsError> {
    let sched = traj.schedule();
    let mut g = [0.0; 2];
    for m in 1..n {
        let big_b = traj.big_b(m, t)?;
        if big_b == 0.0 {
            continue;
        }
        let (a, b) = (traj.a(m, t)?, traj.b(m, t)?);
        let lambda = sched.lambda_n(m);
        let y = relay(traj, n, m, t, x_tilde)?;
        let s1 = wave_s(lambda, y[0]);
        let s2 = wave_s(lambda, y[1]);
        // ω⁽ᵐ⁾ = −B(a²S''S + b²SS'')
        g[0] += -big_b * (a * a * a * s1.0[3] * s2.0[0] + a * b * b * s1.0[1] * s2.0[2]);
        g[1] += -big_b * (a * a * b * s1.0[2] * s2.0[1] + b * b * b * s1.0[0] * s2.0[3]);
    }
    Ok(g)
}
