//! The coupled layer chain: centers forward, aspect ratios backward,
//! amplitude integrals by quadrature, all with dense output per layer.

use odeint::{integrate, DenseSolution, OdeError, OdeOptions};
use schedule::ParamSchedule;
use thiserror::Error;

use crate::ramp::RampProfile;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("schedule scales exceed double precision; reduce N, gamma or C")]
    ScalesNotRepresentable,
    #[error("requested {requested} layers but the schedule plans {planned}")]
    TooManyLayers { requested: usize, planned: usize },
    #[error("integration failed on layer {n}: {source}")]
    Integration { n: usize, source: OdeError },
    #[error("query t = {t} outside layer {n} domain [{lo}, 1]")]
    OutOfDomain { n: usize, t: f64, lo: f64 },
}

struct LayerData {
    ramp: RampProfile,
    /// center₁ₙ(ŝ) on ŝ ∈ [0,1]
    center: DenseSolution,
    /// ln bₙ(ŝ)
    ln_b: DenseSolution,
    /// Hₙ(ŝ) = ∫ h⁽ⁿ⁾ bₙ dt up to tₙ + (1−tₙ)ŝ
    big_h: DenseSolution,
    h_total: f64,
}

/// Integrated time histories for layers 1..=N, queryable at any t ∈ [tₙ, 1].
pub struct LayerChainTrajectory {
    sched: ParamSchedule,
    layers: Vec<LayerData>,
}

/// The three amplitude derivatives at one (n, t):
/// d/dt[Bₙ(aₙ²+bₙ²)] and its a²/b² pieces.
#[derive(Debug, Clone, Copy)]
pub struct AmplitudeDerivatives {
    pub d_sum: f64,
    pub d_a2: f64,
    pub d_b2: f64,
}

/// One CSV-able sample of the trajectory.
#[derive(Debug, Clone, Copy)]
pub struct TrajectoryRow {
    pub n: usize,
    pub t: f64,
    pub hat_t: f64,
    pub center1: f64,
    pub k: f64,
    pub ln_b: f64,
    pub amp_product: f64,
}

// Accessors shared between the builder (partial chain) and the public
// trajectory. `layers` holds the already-integrated layers 1..=len.
struct Chain<'a> {
    sched: &'a ParamSchedule,
    layers: &'a [LayerData],
}

impl<'a> Chain<'a> {
    fn shat(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let t_n = self.sched.t_n(n);
        let omt = self.sched.one_minus_t(n);
        let s = (t - t_n) / omt;
        if !(-1e-9..=1.0 + 1e-9).contains(&s) {
            return Err(DynamicsError::OutOfDomain { n, t, lo: t_n });
        }
        Ok(s.clamp(0.0, 1.0))
    }

    fn center1(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let s = self.shat(n, t)?;
        self.layers[n - 1]
            .center
            .eval(s, 0)
            .map_err(|source| DynamicsError::Integration { n, source })
    }

    fn ln_b(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let s = self.shat(n, t)?;
        self.layers[n - 1]
            .ln_b
            .eval(s, 0)
            .map_err(|source| DynamicsError::Integration { n, source })
    }

    fn ln_a(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        Ok(2.0 * self.sched.ln_scale_end(n) - self.ln_b(n, t)?)
    }

    /// ln(aₙ²+bₙ²), evaluated without forming a² or b² separately.
    fn ln_a2b2(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let ln_b = self.ln_b(n, t)?;
        let ln_a = 2.0 * self.sched.ln_scale_end(n) - ln_b;
        let (hi, lo) = if ln_a > ln_b {
            (ln_a, ln_b)
        } else {
            (ln_b, ln_a)
        };
        Ok(2.0 * hi + (2.0 * (lo - hi)).exp().ln_1p())
    }

    /// Bₙ(aₙ²+bₙ²)(t) = zₙ·Hₙ(t)/Hₙ(1): 0 before tₙ, frozen at zₙ after
    /// t_{n+1}.
    fn amp_product(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        if t <= self.sched.t_n(n) {
            return Ok(0.0);
        }
        if t >= self.sched.t_n(n + 1) {
            return Ok(self.sched.z_n(n));
        }
        let s = self.shat(n, t)?;
        let h = self.layers[n - 1]
            .big_h
            .eval(s, 0)
            .map_err(|source| DynamicsError::Integration { n, source })?;
        Ok(self.sched.z_n(n) * h / self.layers[n - 1].h_total)
    }

    /// Pendulum drive coefficients of past layer m at time t:
    /// (Bₘbₘ, Bₘaₘbₘ, aₘ, center₁ₘ).
    fn drive(&self, m: usize, t: f64) -> Result<(f64, f64, f64, f64), DynamicsError> {
        let p = self.amp_product(m, t)?;
        if p == 0.0 {
            // Layer m not yet switched on; it exerts no force.
            let c = self.center1(m, t)?;
            return Ok((0.0, 0.0, self.ln_a(m, t)?.exp(), c));
        }
        let ln_a2b2 = self.ln_a2b2(m, t)?;
        let ln_b = self.ln_b(m, t)?;
        let ln_a = 2.0 * self.sched.ln_scale_end(m) - ln_b;
        let bb = p * (ln_b - ln_a2b2).exp();
        let bab = p * (ln_a + ln_b - ln_a2b2).exp();
        Ok((bb, bab, ln_a.exp(), self.center1(m, t)?))
    }

    /// Right-hand side of the center ODE for layer n at (t, center value c).
    fn center_rhs(&self, n: usize, t: f64, c: f64) -> Result<f64, DynamicsError> {
        let mut acc = 0.0;
        for m in 1..n {
            let (bb, _, a_m, c_m) = self.drive(m, t)?;
            acc += bb * (a_m * (c - c_m)).sin();
        }
        Ok(acc)
    }

    /// Right-hand side of d ln bₙ/dt at time t (uses layer n's own center).
    fn ln_b_rhs(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let c = self.center1(n, t)?;
        let mut acc = 0.0;
        for m in 1..n {
            let (_, bab, a_m, c_m) = self.drive(m, t)?;
            acc += bab * (a_m * (c - c_m)).cos();
        }
        Ok(acc)
    }
}

/// Integrate the chain for layers 1..=N at the given relative tolerance.
pub fn integrate_chain(
    sched: &ParamSchedule,
    n_layers: usize,
    tol: f64,
) -> Result<LayerChainTrajectory, DynamicsError> {
    if n_layers > sched.n_layers {
        return Err(DynamicsError::TooManyLayers {
            requested: n_layers,
            planned: sched.n_layers,
        });
    }
    if !sched.linear_scales_representable() {
        return Err(DynamicsError::ScalesNotRepresentable);
    }

    let opts = OdeOptions {
        rel_tol: tol,
        abs_tol: tol * 1e-3,
        max_step: Some(1.0 / 1024.0),
        ..OdeOptions::default()
    };

    let mut layers: Vec<LayerData> = Vec::with_capacity(n_layers);
    for n in 1..=n_layers {
        let ramp = RampProfile::new(sched, n);
        let t_n = sched.t_n(n);
        let omt = sched.one_minus_t(n);
        // Initial center offset arcsin(C^{-k_max E_n}) / a_{n-1}(1).
        let offset = (-sched.k_max * sched.e_n(n) * sched.ln_c()).exp().asin()
            / sched.ln_scale_end(n - 1).exp();
        let ic = if n == 1 {
            offset
        } else {
            Chain {
                sched,
                layers: &layers,
            }
            .center1(n - 1, t_n)?
                + offset
        };

        let mut rhs_err: Option<DynamicsError> = None;
        let center = integrate(
            |s, y, dy| {
                let t = t_n + omt * s;
                let ch = Chain {
                    sched,
                    layers: &layers,
                };
                match ch.center_rhs(n, t, y[0]) {
                    Ok(v) => dy[0] = omt * v,
                    Err(e) => {
                        rhs_err.get_or_insert(e);
                        dy[0] = f64::NAN;
                    }
                }
            },
            0.0,
            1.0,
            &[ic],
            &opts,
        );
        if let Some(e) = rhs_err {
            return Err(e);
        }
        let center = center.map_err(|source| DynamicsError::Integration { n, source })?;

        // Aspect ratio, backward from ln b_n(1) = E_n ln C. The RHS needs
        // layer n's own center, so stage a partial record with placeholders.
        let staged = LayerData {
            ramp,
            center,
            ln_b: constant_solution(sched.ln_scale_end(n)),
            big_h: constant_solution(0.0),
            h_total: 1.0,
        };
        layers.push(staged);

        let mut rhs_err: Option<DynamicsError> = None;
        let ln_b = integrate(
            |s, _, dy| {
                let t = t_n + omt * s;
                let ch = Chain {
                    sched,
                    layers: &layers,
                };
                match ch.ln_b_rhs(n, t) {
                    Ok(v) => dy[0] = omt * v,
                    Err(e) => {
                        rhs_err.get_or_insert(e);
                        dy[0] = f64::NAN;
                    }
                }
            },
            1.0,
            0.0,
            &[sched.ln_scale_end(n)],
            &opts,
        );
        if let Some(e) = rhs_err {
            return Err(e);
        }
        let ln_b = ln_b.map_err(|source| DynamicsError::Integration { n, source })?;
        layers.last_mut().unwrap().ln_b = ln_b;

        // Amplitude integral H_n(t) = ∫ h b_n, forward.
        let mut rhs_err: Option<DynamicsError> = None;
        let big_h = integrate(
            |s, _, dy| {
                let t = t_n + omt * s;
                let ch = Chain {
                    sched,
                    layers: &layers,
                };
                let h = ch.layers[n - 1].ramp.h(t);
                match ch.ln_b(n, t) {
                    Ok(lb) => dy[0] = omt * h * lb.exp(),
                    Err(e) => {
                        rhs_err.get_or_insert(e);
                        dy[0] = f64::NAN;
                    }
                }
            },
            0.0,
            1.0,
            &[0.0],
            &opts,
        );
        if let Some(e) = rhs_err {
            return Err(e);
        }
        let big_h = big_h.map_err(|source| DynamicsError::Integration { n, source })?;
        let h_total = big_h
            .eval(1.0, 0)
            .map_err(|source| DynamicsError::Integration { n, source })?;
        let last = layers.last_mut().unwrap();
        last.big_h = big_h;
        last.h_total = h_total;
    }

    Ok(LayerChainTrajectory {
        sched: sched.clone(),
        layers,
    })
}

fn constant_solution(value: f64) -> DenseSolution {
    integrate(
        |_, _, dy| dy[0] = 0.0,
        0.0,
        1.0,
        &[value],
        &OdeOptions {
            max_step: Some(1.0),
            ..OdeOptions::default()
        },
    )
    .expect("constant solution")
}

impl LayerChainTrajectory {
    fn chain(&self) -> Chain<'_> {
        Chain {
            sched: &self.sched,
            layers: &self.layers,
        }
    }

    pub fn schedule(&self) -> &ParamSchedule {
        &self.sched
    }

    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn ramp(&self, n: usize) -> &RampProfile {
        &self.layers[n - 1].ramp
    }

    /// Layer center φ₁⁽ⁿ⁾(t, 0).
    pub fn center1(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        self.chain().center1(n, t)
    }

    pub fn ln_b(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        self.chain().ln_b(n, t)
    }

    pub fn ln_a(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        self.chain().ln_a(n, t)
    }

    pub fn b(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        Ok(self.ln_b(n, t)?.exp())
    }

    pub fn a(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        Ok(self.ln_a(n, t)?.exp())
    }

    /// Aspect exponent kₙ(t) with bₙ = C^{(1+kₙ)Eₙ}.
    pub fn k(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        Ok(self.ln_b(n, t)? / self.sched.ln_scale_end(n) - 1.0)
    }

    /// Center separation Ξ⁽ⁿ⁾(t) = φ₁⁽ⁿ⁾(t,0) − φ₁⁽ⁿ⁻¹⁾(t,0) (layer 0 sits
    /// at the origin).
    pub fn xi(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let own = self.center1(n, t)?;
        if n == 1 {
            Ok(own)
        } else {
            Ok(own - self.center1(n - 1, t)?)
        }
    }

    /// Bₙ(aₙ²+bₙ²)(t); zero before tₙ and frozen at zₙ = 2Mₙ after t_{n+1}.
    pub fn amp_product(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        self.chain().amp_product(n, t)
    }

    /// Stream-function amplitude Bₙ(t).
    pub fn big_b(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let p = self.amp_product(n, t)?;
        if p == 0.0 {
            return Ok(0.0);
        }
        Ok(p * (-self.chain().ln_a2b2(n, t)?).exp())
    }

    pub fn ln_a2b2(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        self.chain().ln_a2b2(n, t)
    }

    /// Amplitude integral Hₙ(t) and its final value Hₙ(1).
    pub fn big_h(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let s = self.chain().shat(n, t)?;
        self.layers[n - 1]
            .big_h
            .eval(s, 0)
            .map_err(|source| DynamicsError::Integration { n, source })
    }

    pub fn h_total(&self, n: usize) -> f64 {
        self.layers[n - 1].h_total
    }

    /// d ln bₙ/dt from the ODE right-hand side (not interpolation).
    pub fn d_ln_b(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        self.chain().ln_b_rhs(n, t)
    }

    /// d φ₁⁽ⁿ⁾/dt(t,0) from the ODE right-hand side.
    pub fn d_center1(&self, n: usize, t: f64) -> Result<f64, DynamicsError> {
        let c = self.center1(n, t)?;
        self.chain().center_rhs(n, t, c)
    }

    /// The three amplitude time derivatives at (n, t):
    /// d/dt[Bₙ(aₙ²+bₙ²)] = zₙ h⁽ⁿ⁾ bₙ / Hₙ(1) and its Leibniz split into
    /// d/dt[Bₙaₙ²] and d/dt[Bₙbₙ²].
    pub fn amplitude_time_derivatives(
        &self,
        n: usize,
        t: f64,
    ) -> Result<AmplitudeDerivatives, DynamicsError> {
        let h = self.layers[n - 1].ramp.h(t);
        let b_n = self.b(n, t)?;
        let d_sum = self.sched.z_n(n) * h * b_n / self.h_total(n);

        let p = self.amp_product(n, t)?;
        let ln_a2b2 = self.chain().ln_a2b2(n, t)?;
        let a2b2 = ln_a2b2.exp();
        let ln_b = self.ln_b(n, t)?;
        let ln_a = 2.0 * self.sched.ln_scale_end(n) - ln_b;
        let (a2, b2) = ((2.0 * ln_a).exp(), (2.0 * ln_b).exp());
        let d_ln_b = self.d_ln_b(n, t)?;

        // d(a²+b²)/dt = 2 d ln b · (b² − a²) since d ln a = −d ln b.
        let d_a2b2 = 2.0 * d_ln_b * (b2 - a2);
        let big_b = p / a2b2;
        let d_big_b = d_sum / a2b2 - p * d_a2b2 / (a2b2 * a2b2);

        let d_b2 = (d_big_b + 2.0 * big_b * d_ln_b) * b2;
        let d_a2 = (d_big_b - 2.0 * big_b * d_ln_b) * a2;
        Ok(AmplitudeDerivatives { d_sum, d_a2, d_b2 })
    }

    /// Uniform samples (in each layer's rescaled time) for export.
    pub fn sample_rows(&self, per_layer: usize) -> Result<Vec<TrajectoryRow>, DynamicsError> {
        let mut rows = Vec::new();
        for n in 1..=self.n_layers() {
            let t_n = self.sched.t_n(n);
            let omt = self.sched.one_minus_t(n);
            for i in 0..per_layer {
                let hat_t = i as f64 / (per_layer - 1) as f64;
                let t = t_n + omt * hat_t;
                rows.push(TrajectoryRow {
                    n,
                    t,
                    hat_t,
                    center1: self.center1(n, t)?,
                    k: self.k(n, t)?,
                    ln_b: self.ln_b(n, t)?,
                    amp_product: self.amp_product(n, t)?,
                });
            }
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use schedule::{plan, PlanConfig};

    fn desk_chain() -> LayerChainTrajectory {
        let sched = plan(&PlanConfig::desk(2)).unwrap();
        integrate_chain(&sched, 2, 1e-10).unwrap()
    }

    #[test]
    fn layer_one_is_frozen() {
        let traj = desk_chain();
        let s = traj.schedule();
        let want = (-s.k_max * s.e_n(1) * s.ln_c()).exp().asin() / s.c;
        for &t in &[0.0, 0.3, 0.77, 1.0] {
            assert!((traj.center1(1, t).unwrap() - want).abs() < 1e-15);
            assert!(traj.k(1, t).unwrap().abs() < 1e-12, "k_1 must vanish");
        }
    }

    #[test]
    fn aspect_product_is_conserved() {
        let traj = desk_chain();
        let s = traj.schedule();
        for n in 1..=2 {
            for &t in &[s.t_n(n), 0.5 * (s.t_n(n) + 1.0), 0.99, 1.0] {
                let sum = traj.ln_a(n, t).unwrap() + traj.ln_b(n, t).unwrap();
                assert!(
                    (sum - 2.0 * s.ln_scale_end(n)).abs() < 1e-9,
                    "a_n b_n = C^(2E_n) at n={n}, t={t}"
                );
            }
        }
    }

    #[test]
    fn terminal_aspect_exponent_vanishes() {
        let traj = desk_chain();
        assert!(traj.k(1, 1.0).unwrap().abs() < 1e-9);
        assert!(traj.k(2, 1.0).unwrap().abs() < 1e-9);
    }

    #[test]
    fn amplitude_product_hits_two_m_n() {
        let traj = desk_chain();
        let s = traj.schedule();
        for n in 1..=2 {
            let got = traj.amp_product(n, 1.0).unwrap();
            let want = 2.0 * s.m_n(n);
            assert!(
                ((got - want) / want).abs() < 1e-10,
                "B_n(a^2+b^2)(1) = 2 M_n at n={n}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn amplitude_vanishes_before_activation() {
        let traj = desk_chain();
        let s = traj.schedule();
        assert_eq!(traj.amp_product(2, 0.5 * s.t_n(2)).unwrap(), 0.0);
        assert_eq!(traj.big_b(2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn amplitude_derivative_identities() {
        let traj = desk_chain();
        let s = traj.schedule();
        // Mid-plateau of layer 2 and a point on its up ramp.
        let r = traj.ramp(2);
        for &t in &[
            0.5 * (r.plateau_start() + r.plateau_end()),
            r.t_start + 0.5 * r.width,
        ] {
            let d = traj.amplitude_time_derivatives(2, t).unwrap();
            assert!(
                ((d.d_a2 + d.d_b2 - d.d_sum) / d.d_sum.abs().max(1e-300)).abs() < 1e-12,
                "Leibniz split must re-sum at t={t}"
            );
        }
        // After the window the product derivative vanishes and the pieces
        // cancel exactly.
        let t_late = 0.5 * (s.t_n(3) + 1.0);
        let d = traj.amplitude_time_derivatives(2, t_late).unwrap();
        assert_eq!(d.d_sum, 0.0);
        assert!((d.d_a2 + d.d_b2).abs() < 1e-12 * d.d_a2.abs().max(1.0));
    }

    #[test]
    fn amplitude_derivative_matches_finite_difference() {
        let traj = desk_chain();
        let r = traj.ramp(2);
        let t = r.t_start + 0.6 * r.width;
        let d = traj.amplitude_time_derivatives(2, t).unwrap();
        let h0 = 1e-6 * (1.0 - r.t_start);
        let (fd, _) =
            odeint::central_diff_richardson(|tt| traj.amp_product(2, tt).unwrap(), t, h0, 4);
        assert!(
            ((fd - d.d_sum) / d.d_sum).abs() < 1e-6,
            "FD check: {fd} vs {}",
            d.d_sum
        );
    }

    #[test]
    fn queries_outside_domain_error() {
        let traj = desk_chain();
        let s = traj.schedule();
        assert!(traj.k(2, 0.5 * s.t_n(2)).is_err());
        assert!(traj.center1(1, 1.5).is_err());
    }
}
