//! The smooth amplitude ramp h⁽ⁿ⁾: a C^∞ trapezoid in time that switches a
//! layer's density on and off inside its window [tₙ, t_{n+1}].
//!
//! Built from the transition function
//! ϑ(x) = e^{−1/x}·χ_{x>0} / (e^{−1/x}·χ_{x>0} + e^{−1/(1−x)}·χ_{x<1}):
//! dh/dt = (1/((1−tₙ)ζ))·ϑ(·)·ϑ(−·) on the up ramp of width (1−tₙ)ζ, the
//! mirror image on the down ramp, and 0 elsewhere. h itself is the
//! quadrature of dh/dt; by the exact mirror symmetry h(t_{n+1}) = 0.

use odeint::{integrate, DenseSolution, OdeOptions};
use schedule::ParamSchedule;

/// Smooth transition: 0 on (−∞,0], 1 on [1,∞), with ϑ(x)+ϑ(1−x) = 1.
pub fn transition(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let rise = (-1.0 / x).exp();
        let fall = (-1.0 / (1.0 - x)).exp();
        rise / (rise + fall)
    }
}

/// Ramp of one layer. The normalized profile
/// g(σ) = ∫₀^σ ϑ(τ/ε)ϑ((1−τ)/ε) dτ on [0,1] is precomputed once; both ramp
/// flanks are read from it, which makes the up/down symmetry exact and
/// h(t_{n+1}) identically zero.
#[derive(Debug, Clone)]
pub struct RampProfile {
    pub n: usize,
    pub t_start: f64,
    pub t_end: f64,
    /// Ramp flank width (1−tₙ)ζ.
    pub width: f64,
    pub eps: f64,
    profile: DenseSolution,
    plateau: f64,
}

impl RampProfile {
    pub fn new(sched: &ParamSchedule, n: usize) -> Self {
        let (t_start, t_end) = sched.window(n);
        let width = sched.one_minus_t(n) * sched.zeta;
        let eps = sched.eps;
        let opts = OdeOptions {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_step: Some(1.0 / 512.0),
            ..OdeOptions::default()
        };
        let profile = integrate(
            |s, _, dy| dy[0] = transition(s / eps) * transition((1.0 - s) / eps),
            0.0,
            1.0,
            &[0.0],
            &opts,
        )
        .expect("normalized ramp profile integrates on [0,1]");
        let plateau = profile.eval(1.0, 0).unwrap();
        RampProfile {
            n,
            t_start,
            t_end,
            width,
            eps,
            profile,
            plateau,
        }
    }

    /// Plateau value of h; lies in [1−2ε, 1].
    pub fn plateau(&self) -> f64 {
        self.plateau
    }

    /// Start of the plateau, tₙ + (1−tₙ)ζ.
    pub fn plateau_start(&self) -> f64 {
        self.t_start + self.width
    }

    /// End of the plateau, t_{n+1} − (1−tₙ)ζ.
    pub fn plateau_end(&self) -> f64 {
        self.t_end - self.width
    }

    /// Ramp height h(t).
    pub fn h(&self, t: f64) -> f64 {
        if t <= self.t_start || t >= self.t_end {
            0.0
        } else if t < self.plateau_start() {
            self.profile
                .eval((t - self.t_start) / self.width, 0)
                .unwrap()
        } else if t <= self.plateau_end() {
            self.plateau
        } else {
            // Same profile read backwards: g((t_end−t)/w) equals
            // plateau − g((t−plateau_end)/w) by the integrand's symmetry,
            // and makes the mirror identity and h(t_end) = 0 exact.
            self.profile.eval((self.t_end - t) / self.width, 0).unwrap()
        }
    }

    /// Time derivative dh/dt, evaluated from the closed-form flanks.
    pub fn dh_dt(&self, t: f64) -> f64 {
        let scaled = |s: f64| {
            transition(s / (self.eps * self.width))
                * transition((self.width - s) / (self.eps * self.width))
        };
        if t <= self.t_start || t >= self.t_end {
            0.0
        } else if t < self.plateau_start() {
            scaled(t - self.t_start) / self.width
        } else if t <= self.plateau_end() {
            0.0
        } else {
            -scaled(t - self.plateau_end()) / self.width
        }
    }
}
