//! Scaling envelopes of the per-term force norms.
//!
//! Each force term of layer n obeys a norm envelope of the form
//! `const · C^{ξ · s_n}` with `s_n = (1/(1−γ))ⁿ`, where the exponent ξ
//! depends only on (α, k_max, Λ, γ, δ, μ, ζ).  The layer-to-layer norm
//! ratio therefore behaves like `C^{ξ_max (s_n − s_{n−1})}`: summable
//! forces need every ξ < 0, and the regularity threshold α* is exactly
//! where the leading exponents change sign.
//!
//! Direct numerical norm estimation can only reach this regime partially:
//! the transport exponents contain `+2(1−γ)` / `+3(1−γ)` penalties (the
//! past layer's amplitude), so they only turn negative for γ ≳ 0.96 —
//! where the layer scales C^{Eₙ} overflow f64 and pointwise field
//! evaluation is impossible.  The envelope exponents remain computable
//! for any parameters, in log space, and carry the trend information.

/// Parameters entering the envelope exponents.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeConfig {
    pub gamma: f64,
    pub delta: f64,
    pub mu: f64,
    pub zeta: f64,
    pub k_max: f64,
    /// Cutoff-scale exponent Λ (λₙ = C^{−ΛEₙ}).
    pub lambda: f64,
}

/// Per-layer exponents ξ of each force term's norm envelope.
#[derive(Debug, Clone, Copy)]
pub struct TermExponents {
    /// ‖τ⁽ⁿ⁾‖_{C^α}
    pub tau: f64,
    /// ‖Q_ω⁽ⁿ⁾‖_{C^α}
    pub q_omega: f64,
    /// ‖O_ω⁽ⁿ⁾‖_{C^α}
    pub o_omega: f64,
    /// ‖T_ω⁽ⁿ⁾‖_{C^α}
    pub t_omega: f64,
    /// ‖∂ₜρ̃⁽ⁿ⁾‖_{C^{1,α}}
    pub dt_rho: f64,
    /// ‖Q_ρ⁽ⁿ⁾‖_{C^{1,α}}
    pub q_rho: f64,
    /// ‖T_ρ⁽ⁿ⁾‖_{C^{1,α}}  (O_ρ is identically zero and has no envelope)
    pub t_rho: f64,
}

impl TermExponents {
    pub fn max_omega(&self) -> f64 {
        self.tau
            .max(self.q_omega)
            .max(self.o_omega)
            .max(self.t_omega)
    }

    pub fn max_rho(&self) -> f64 {
        self.dt_rho.max(self.q_rho).max(self.t_rho)
    }

    pub fn all_negative(&self) -> bool {
        self.max_omega() < 0.0 && self.max_rho() < 0.0
    }
}

/// Envelope exponents at Hölder index alpha.
pub fn term_exponents(cfg: &EnvelopeConfig, alpha: f64) -> TermExponents {
    let EnvelopeConfig {
        gamma,
        delta,
        mu,
        zeta,
        k_max,
        lambda,
    } = *cfg;
    // Shorthand for the recurring pieces.
    let growth = 2.0 * lambda + 3.0 * k_max - 1.0;
    let shear = (alpha * (1.0 - k_max) - lambda).max(0.0);

    let tau = alpha * (1.0 + k_max) - lambda + 3.0 * mu + 2.0 * delta;
    let q_omega = alpha * (1.0 + k_max) - lambda + 2.0 * delta + 5.0 * mu;
    let o_omega = -(1.0 - alpha) + 4.0 * mu + 2.0 * (1.0 - gamma) + 2.0 * delta;
    let t_omega = 4.0 * mu
        + 2.0 * delta
        + 2.0 * (1.0 - gamma)
        + (alpha * (1.0 + k_max) + growth).max(growth + shear);

    let dt_rho = alpha - k_max + 4.0 * zeta + 7.0 * mu + 3.0 * delta;
    let q_rho = alpha
        - k_max
            .min((1.0 - alpha) * k_max + alpha * lambda)
            .min(lambda - alpha * k_max)
        + 3.0 * delta
        + 3.0 * mu;
    let t_rho = 6.0 * mu
        + 3.0 * delta
        + 3.0 * (1.0 - gamma)
        + (-((1.0 - alpha) * (1.0 - k_max)).min(1.0 - k_max - lambda))
            .max(growth + shear)
            .max(alpha * (1.0 + k_max) + growth);

    TermExponents {
        tau,
        q_omega,
        o_omega,
        t_omega,
        dt_rho,
        q_rho,
        t_rho,
    }
}

/// ln of the layer-(n)/(n−1) norm-envelope ratio for the dominating term,
/// i.e. ξ_max · (s_n − s_{n−1}) · ln C, returned as (vorticity, density).
pub fn ln_envelope_ratio(cfg: &EnvelopeConfig, alpha: f64, c: f64, n: usize) -> (f64, f64) {
    let e = term_exponents(cfg, alpha);
    let s = 1.0 / (1.0 - cfg.gamma);
    let step = s.powi(n as i32) - s.powi(n as i32 - 1);
    (e.max_omega() * step * c.ln(), e.max_rho() * step * c.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use schedule::optimal_exponents;

    fn feasible() -> EnvelopeConfig {
        let x = optimal_exponents();
        EnvelopeConfig {
            gamma: 0.99,
            delta: 1e-3,
            mu: 1e-3,
            zeta: 1e-3,
            k_max: x.k_max_star,
            lambda: x.lambda_star,
        }
    }

    #[test]
    fn all_terms_decay_below_half_the_critical_index() {
        let x = optimal_exponents();
        let e = term_exponents(&feasible(), 0.5 * x.alpha_star);
        assert!(e.all_negative(), "{e:?}");
        // Hand-checked values.
        assert!((e.tau - (-0.084353)).abs() < 1e-4, "tau {}", e.tau);
        assert!(
            (e.t_omega - (-0.063357)).abs() < 1e-4,
            "t_omega {}",
            e.t_omega
        );
        assert!((e.t_rho - (-0.050357)).abs() < 1e-4, "t_rho {}", e.t_rho);
    }

    #[test]
    fn dominating_terms_grow_near_index_one() {
        let e = term_exponents(&feasible(), 0.99);
        assert!(e.max_omega() > 0.0 && e.max_rho() > 0.0, "{e:?}");
    }

    #[test]
    fn envelope_ratio_brackets_one() {
        let x = optimal_exponents();
        let cfg = feasible();
        let (lo_w, lo_r) = ln_envelope_ratio(&cfg, 0.5 * x.alpha_star, 10.0, 2);
        assert!(lo_w < 0.0 && lo_r < 0.0);
        let (hi_w, hi_r) = ln_envelope_ratio(&cfg, 0.99, 10.0, 2);
        assert!(hi_w > 0.0 && hi_r > 0.0);
    }

    #[test]
    fn exponents_increase_with_alpha() {
        let cfg = feasible();
        let mut prev = f64::NEG_INFINITY;
        for i in 0..20 {
            let a = 0.01 + 0.98 * i as f64 / 19.0;
            let e = term_exponents(&cfg, a);
            let m = e.max_omega().max(e.max_rho());
            assert!(m >= prev, "not monotone at alpha={a}");
            prev = m;
        }
    }

    #[test]
    fn transport_needs_gamma_near_one() {
        let x = optimal_exponents();
        let mut cfg = feasible();
        cfg.gamma = 0.9;
        let e = term_exponents(&cfg, 0.5 * x.alpha_star);
        assert!(e.t_omega > 0.0, "transport should grow at gamma=0.9");
    }
}
