//! The degenerate inverted half-pendulum dF/dt = sin F and the ideal layer
//! models built on it.
//!
//! The pendulum starts at F(0) = F0 ∈ (0, π) and creeps toward the unstable
//! equilibrium π, reaching it only in infinite time. Closed forms:
//!
//! - sin F(t) = 1/cosh(t_max − t) with t_max = ln((1+cos F0)/sin F0),
//! - ∫₀ᵗ cos F = ln(cosh t_max / cosh(t_max − t)) = ln(sin F(t)/sin F0).
//!
//! A layer's center separation follows this pendulum in rescaled time, which
//! yields the ideal profiles: the sine bump `ideal_xi` and the aspect-ratio
//! exponent `ideal_k` that flattens toward the tent `limit_profile` as the
//! layer index grows. Hyperbolic quantities are evaluated through
//! 1/cosh(z) = 2e^{−|z|}/(1+e^{−2|z|}) and its log so that arguments of size
//! k_max·Eₙ·ln C never overflow.

use odeint::{integrate, OdeError, OdeOptions};
use schedule::ParamSchedule;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PendulumError {
    #[error("initial angle must lie in (0, pi), got {0}")]
    InitialAngle(f64),
    #[error("numeric integration failed: {0}")]
    Integration(#[from] OdeError),
}

/// 1/cosh(z), overflow-safe for any |z|.
pub fn sech(z: f64) -> f64 {
    let e = (-z.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// ln(1/cosh(z)) = −|z| + ln 2 − ln(1 + e^{−2|z|}), safe for |z| up to 1e5
/// and far beyond.
pub fn ln_sech(z: f64) -> f64 {
    -z.abs() + std::f64::consts::LN_2 - (-2.0 * z.abs()).exp().ln_1p()
}

fn check_angle(f0: f64) -> Result<(), PendulumError> {
    if f0 > 0.0 && f0 < std::f64::consts::PI {
        Ok(())
    } else {
        Err(PendulumError::InitialAngle(f0))
    }
}

/// Time at which the pendulum passes π/2: t_max = ln((1+cos F0)/sin F0),
/// computed as −ln tan(F0/2) which stays finite-form near both ends.
pub fn t_max(f0: f64) -> Result<f64, PendulumError> {
    check_angle(f0)?;
    Ok(-(f0 / 2.0).tan().ln())
}

/// Closed form sin F(t) = 1/cosh(t_max − t).
pub fn pendulum_sin(f0: f64, t: f64) -> Result<f64, PendulumError> {
    Ok(sech(t_max(f0)? - t))
}

/// Closed form cos F(t) = tanh(t_max − t); positive before the crossing.
pub fn pendulum_cos(f0: f64, t: f64) -> Result<f64, PendulumError> {
    Ok((t_max(f0)? - t).tanh())
}

/// Adaptive Runge-Kutta solution of dF/dt = sin F, the oracle the closed
/// forms are validated against. Handles t of either sign.
pub fn pendulum_numeric(f0: f64, t: f64, tol: f64) -> Result<f64, PendulumError> {
    check_angle(f0)?;
    if t == 0.0 {
        return Ok(f0);
    }
    let opts = OdeOptions {
        rel_tol: tol,
        abs_tol: tol * 1e-2,
        max_step: Some(t.abs() / 128.0),
        ..OdeOptions::default()
    };
    let sol = integrate(|_, y, dy| dy[0] = y[0].sin(), 0.0, t, &[f0], &opts)?;
    Ok(sol.eval(t, 0)?)
}

/// ∫₀ᵗ cos F(s) ds = ln(cosh t_max / cosh(t_max − t)) = ln(sin F(t)/sin F0).
pub fn cos_integral(f0: f64, t: f64) -> Result<f64, PendulumError> {
    let tm = t_max(f0)?;
    Ok(ln_sech(tm - t) - ln_sech(tm))
}

/// Frozen-coefficient model of layer n in rescaled time t̂ ∈ [0, 1].
///
/// Carries the half period t̂_max = arccosh(C^{k_max·Eₙ}) and the log scale
/// ln C·Eₙ; everything else is derived. The underlying pendulum has speed
/// M_{n−1}(1−tₙ) = 2·t̂_max, so the sine profile peaks at exactly 1 at
/// t̂ = 1/2 and returns to its initial value C^{−k_max·Eₙ} at t̂ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealLayerModel {
    pub n: usize,
    pub hat_t_max: f64,
    pub k_max: f64,
    /// ln C · Eₙ, the log of the layer's scale base.
    pub ln_scale: f64,
}

impl IdealLayerModel {
    /// Build the model for layer n (1 ≤ n ≤ N+1) from a schedule.
    pub fn from_schedule(sched: &ParamSchedule, n: usize) -> Self {
        IdealLayerModel {
            n,
            hat_t_max: sched.hat_t_max(n),
            k_max: sched.k_max,
            ln_scale: sched.ln_c() * sched.e_n(n),
        }
    }

    /// sin(a_{n−1}(1)·Ξ₀⁽ⁿ⁾) at rescaled time: 1/cosh(t̂_max(1 − 2t̂)).
    pub fn ideal_xi(&self, hat_t: f64) -> f64 {
        sech(self.hat_t_max * (1.0 - 2.0 * hat_t))
    }

    /// The ideal aspect-ratio exponent
    /// k̄ₙ = k_max + ln(1/cosh(t̂_max(1−2t̂)))/(ln C·Eₙ).
    pub fn ideal_k(&self, hat_t: f64) -> f64 {
        self.k_max + ln_sech(self.hat_t_max * (1.0 - 2.0 * hat_t)) / self.ln_scale
    }

    /// Initial separation scale sin(a_{n−1}(1)·Ξ₀⁽ⁿ⁾(tₙ)) = C^{−k_max·Eₙ}.
    pub fn initial_sine(&self) -> f64 {
        (-self.k_max * self.ln_scale).exp()
    }
}

/// Tent profile k_max(1 − |1 − 2t̂|), the n → ∞ limit of `ideal_k`.
pub fn limit_profile(hat_t: f64, k_max: f64) -> f64 {
    k_max * (1.0 - (1.0 - 2.0 * hat_t).abs())
}
