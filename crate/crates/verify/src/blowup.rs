//! Blow-up tracking: the per-layer density-gradient integral that drives the
//! norm inflation, and the vorticity amplitude each layer leaves behind.

use dynamics::{DynamicsError, LayerChainTrajectory};
use fields::{layer_fields, Chart};
use std::f64::consts::PI;

/// Measured blow-up quantities of one layer.
#[derive(Debug, Clone)]
pub struct BlowupLayer {
    pub n: usize,
    pub m_n: f64,
    /// Grid lower bound of ∫ over the window of sup|∂ρ/∂x₂| dt.
    pub integral: f64,
    /// integral / (2 Mₙ); approaches 1 from below on resolved grids.
    pub ratio_to_2m: f64,
    /// Grid max of |ω| at the switch time t_{n+1}.
    pub omega_max_at_switch: f64,
    pub omega_ratio: f64,
    /// Grid max of |ρ| at the switch time; identically 0.
    pub density_max_at_switch: f64,
    /// Mₙ/M_{n−1} (0 for n = 1).
    pub m_ratio: f64,
    /// The schedule's own prediction for that ratio.
    pub m_ratio_predicted: f64,
}

#[derive(Debug, Clone, Default)]
pub struct BlowupReport {
    pub layers: Vec<BlowupLayer>,
}

/// Grid max over one period cell [0,π]² of the layer chart.
fn grid_sup(
    traj: &LayerChainTrajectory,
    n: usize,
    t: f64,
    grid: usize,
    pick: impl Fn(&fields::FieldSample) -> f64,
) -> Result<f64, DynamicsError> {
    let chart = Chart::from_trajectory(traj, n, t)?;
    let mut sup = 0.0f64;
    for i in 0..=grid {
        for j in 0..=grid {
            let tilde = [PI * i as f64 / grid as f64, PI * j as f64 / grid as f64];
            let s = layer_fields(traj, n, t, chart.forward(tilde))?;
            sup = sup.max(pick(&s).abs());
        }
    }
    Ok(sup)
}

/// Track each layer's blow-up contribution on a (grid+1)² chart cell.
pub fn blowup_tracker(
    traj: &LayerChainTrajectory,
    n_layers: usize,
    grid: usize,
) -> Result<BlowupReport, DynamicsError> {
    let s = traj.schedule();
    let mut rep = BlowupReport::default();
    for n in 1..=n_layers {
        let (t_lo, t_hi) = s.window(n);

        // Simpson in t of the grid sup of |d rho / d x2|.
        let steps = 128;
        let h = (t_hi - t_lo) / steps as f64;
        let mut integral = 0.0;
        for i in 0..=steps {
            let t = t_lo + i as f64 * h;
            let v = grid_sup(traj, n, t, grid, |s| s.grad_rho[1])?;
            let w = if i == 0 || i == steps {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            integral += w * v;
        }
        integral *= h / 3.0;

        let m_n = s.m_n(n);
        let omega_max = grid_sup(traj, n, t_hi, grid, |s| s.omega)?;
        let rho_max = grid_sup(traj, n, t_hi, grid, |s| s.rho)?;
        let (m_ratio, m_ratio_predicted) = if n >= 2 {
            let predicted = (s.delta * (s.e_n(n) - s.e_n(n - 1)) * s.ln_c()).exp()
                * schedule::arccosh_exp(s.k_max * s.e_n(n + 1) * s.ln_c())
                / schedule::arccosh_exp(s.k_max * s.e_n(n) * s.ln_c());
            (m_n / s.m_n(n - 1), predicted)
        } else {
            (0.0, 0.0)
        };
        rep.layers.push(BlowupLayer {
            n,
            m_n,
            integral,
            ratio_to_2m: integral / (2.0 * m_n),
            omega_max_at_switch: omega_max,
            omega_ratio: omega_max / (2.0 * m_n),
            density_max_at_switch: rho_max,
            m_ratio,
            m_ratio_predicted,
        });
    }
    Ok(rep)
}
