//! Adaptive Dormand-Prince 5(4) with dense output.
//!
//! The solver stores the accepted mesh together with the right-hand side at
//! every mesh point; queries between mesh points use cubic Hermite
//! interpolation, which keeps the dense error within a constant of the local
//! step error for the tolerances used in this workspace.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum OdeError {
    #[error("step size underflow at t = {t} (requested h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },
    #[error("step limit {max_steps} exceeded at t = {t}")]
    StepLimit { t: f64, max_steps: usize },
    #[error("non-finite right-hand side at t = {t}")]
    NonFinite { t: f64 },
    #[error("query t = {t} outside solution range [{lo}, {hi}]")]
    OutOfRange { t: f64, lo: f64, hi: f64 },
}

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    /// Initial step size guess; `None` picks a conservative fraction of the span.
    pub first_step: Option<f64>,
    /// Step size cap. The dense output is a cubic Hermite on the accepted
    /// mesh, whose error grows like h^4 even when the one-step error is tiny,
    /// so easy stretches must not take arbitrarily large steps. `None` caps
    /// at span/64.
    pub max_step: Option<f64>,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
            first_step: None,
            max_step: None,
        }
    }
}

/// Solution mesh with values and derivatives, ordered by increasing t even
/// when the integration ran backward.
#[derive(Debug, Clone)]
pub struct DenseSolution {
    ts: Vec<f64>,
    ys: Vec<Vec<f64>>,
    fs: Vec<Vec<f64>>,
    dim: usize,
}

impl DenseSolution {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn t_lo(&self) -> f64 {
        self.ts[0]
    }

    pub fn t_hi(&self) -> f64 {
        *self.ts.last().unwrap()
    }

    pub fn mesh(&self) -> &[f64] {
        &self.ts
    }

    fn locate(&self, t: f64) -> Result<usize, OdeError> {
        let (lo, hi) = (self.t_lo(), self.t_hi());
        // Tolerate end-point queries that miss by rounding only.
        let slack = 1e-12 * (1.0 + hi.abs().max(lo.abs()));
        if t < lo - slack || t > hi + slack {
            return Err(OdeError::OutOfRange { t, lo, hi });
        }
        let idx = match self.ts.binary_search_by(|a| a.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.ts.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.ts.len() - 2),
        };
        Ok(idx)
    }

    /// Value of component `c` at `t` by cubic Hermite interpolation.
    pub fn eval(&self, t: f64, c: usize) -> Result<f64, OdeError> {
        let i = self.locate(t)?;
        let (t0, t1) = (self.ts[i], self.ts[i + 1]);
        let h = t1 - t0;
        let s = if h == 0.0 { 0.0 } else { (t - t0) / h };
        let (y0, y1) = (self.ys[i][c], self.ys[i + 1][c]);
        let (f0, f1) = (self.fs[i][c], self.fs[i + 1][c]);
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Ok(h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1)
    }

    /// Time derivative of component `c` at `t` (derivative of the Hermite cubic).
    pub fn eval_deriv(&self, t: f64, c: usize) -> Result<f64, OdeError> {
        let i = self.locate(t)?;
        let (t0, t1) = (self.ts[i], self.ts[i + 1]);
        let h = t1 - t0;
        let s = if h == 0.0 { 0.0 } else { (t - t0) / h };
        let (y0, y1) = (self.ys[i][c], self.ys[i + 1][c]);
        let (f0, f1) = (self.fs[i][c], self.fs[i + 1][c]);
        let s2 = s * s;
        let d00 = (6.0 * s2 - 6.0 * s) / h;
        let d10 = 3.0 * s2 - 4.0 * s + 1.0;
        let d01 = (-6.0 * s2 + 6.0 * s) / h;
        let d11 = 3.0 * s2 - 2.0 * s;
        Ok(d00 * y0 + d10 * f0 + d01 * y1 + d11 * f1)
    }
}

// Dormand-Prince 5(4) Butcher tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// 5th-order weights equal the last A row; E holds (b5 - b4) for the error estimate.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate dy/dt = f(t, y) from `t0` to `t1` (either direction).
pub fn integrate<F>(
    mut f: F,
    t0: f64,
    t1: f64,
    y0: &[f64],
    opts: &OdeOptions,
) -> Result<DenseSolution, OdeError>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = y0.len();
    let dir = if t1 >= t0 { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();

    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; dim]; 7];
    f(t, &y, &mut k[0]);
    if k[0].iter().any(|v| !v.is_finite()) {
        return Err(OdeError::NonFinite { t });
    }

    let mut ts = vec![t];
    let mut ys = vec![y.clone()];
    let mut fs = vec![k[0].clone()];

    let h_max = opts.max_step.unwrap_or(span / 64.0).min(span);
    let mut h = opts.first_step.unwrap_or(span / 100.0).min(h_max) * dir;
    if h == 0.0 {
        // Degenerate interval: return the single point duplicated so that
        // interpolation still works.
        ts.push(t0);
        ys.push(ys[0].clone());
        fs.push(fs[0].clone());
        return Ok(DenseSolution { ts, ys, fs, dim });
    }

    let mut y_stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];
    let mut steps = 0usize;

    while (t1 - t) * dir > 0.0 {
        if steps >= opts.max_steps {
            return Err(OdeError::StepLimit {
                t,
                max_steps: opts.max_steps,
            });
        }
        steps += 1;
        // Underflow is judged on the adaptive step before the endpoint clamp:
        // the final step is legitimately tiny.
        if h.abs() < 1e-14 * span.max(1e-300) {
            return Err(OdeError::StepUnderflow { t, h });
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }

        for s in 0..6 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[i];
                }
                y_stage[i] = y[i] + h * acc;
            }
            f(t + C[s] * h, &y_stage, &mut k[s + 1]);
        }
        // FSAL: the 6th stage already holds the 5th-order solution.
        y_new.copy_from_slice(&y_stage);

        let mut err = 0.0f64;
        for i in 0..dim {
            let mut e = 0.0;
            for (j, kj) in k.iter().enumerate() {
                e += E[j] * kj[i];
            }
            e *= h;
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
            err = err.max((e / scale).abs());
        }

        if !err.is_finite() {
            return Err(OdeError::NonFinite { t: t + h });
        }

        if err <= 1.0 {
            t += h;
            y.copy_from_slice(&y_new);
            k.swap(0, 6); // FSAL reuse: f(t_new, y_new) is stage 7
            ts.push(t);
            ys.push(y.clone());
            fs.push(k[0].clone());
        }

        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h * factor).clamp(-h_max, h_max);
    }

    if dir < 0.0 {
        ts.reverse();
        ys.reverse();
        fs.reverse();
    }
    if ts.len() < 2 {
        ts.push(ts[0]);
        ys.push(ys[0].clone());
        fs.push(fs[0].clone());
    }
    Ok(DenseSolution { ts, ys, fs, dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_matches_closed_form() {
        let sol = integrate(
            |_, y, dy| dy[0] = -y[0],
            0.0,
            5.0,
            &[1.0],
            &OdeOptions::default(),
        )
        .unwrap();
        for &t in &[0.0, 0.3, 1.7, 4.99, 5.0] {
            let got = sol.eval(t, 0).unwrap();
            assert!(
                (got - (-t).exp()).abs() < 1e-9,
                "exp decay at t={t}: got {got}"
            );
        }
    }

    #[test]
    fn backward_integration_recovers_initial_value() {
        // y' = cos(t), terminal condition at t = 2.
        let sol = integrate(
            |t, _, dy| dy[0] = t.cos(),
            2.0,
            0.0,
            &[2.0f64.sin()],
            &OdeOptions::default(),
        )
        .unwrap();
        let got = sol.eval(0.0, 0).unwrap();
        assert!(got.abs() < 1e-9, "sin(0) from backward run: {got}");
        assert!(sol.t_lo() <= sol.t_hi(), "mesh must be ascending");
    }

    #[test]
    fn dense_derivative_tracks_rhs() {
        let opts = OdeOptions {
            max_step: Some(2.0 / 512.0),
            ..OdeOptions::default()
        };
        let sol = integrate(|t, _, dy| dy[0] = (3.0 * t).cos(), 0.0, 2.0, &[0.0], &opts).unwrap();
        for &t in &[0.1, 0.77, 1.5] {
            let got = sol.eval_deriv(t, 0).unwrap();
            assert!((got - (3.0 * t).cos()).abs() < 1e-6, "deriv at t={t}");
        }
    }

    #[test]
    fn out_of_range_query_is_an_error() {
        let sol = integrate(
            |_, _, dy| dy[0] = 1.0,
            0.0,
            1.0,
            &[0.0],
            &OdeOptions::default(),
        )
        .unwrap();
        assert!(sol.eval(1.5, 0).is_err());
        assert!(sol.eval(-0.5, 0).is_err());
    }

    #[test]
    fn stiffish_two_component_system() {
        // Harmonic oscillator, energy check after many periods.
        let sol = integrate(
            |_, y, dy| {
                dy[0] = y[1];
                dy[1] = -y[0];
            },
            0.0,
            20.0 * std::f64::consts::PI,
            &[1.0, 0.0],
            &OdeOptions::default(),
        )
        .unwrap();
        let t = 20.0 * std::f64::consts::PI;
        let x = sol.eval(t, 0).unwrap();
        let v = sol.eval(t, 1).unwrap();
        assert!((x - 1.0).abs() < 1e-7 && v.abs() < 1e-7, "x={x} v={v}");
    }
}
