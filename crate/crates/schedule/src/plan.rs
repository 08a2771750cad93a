//! Deterministic construction of the full parameter plan.
//!
//! The plan closes the layer system around three exact identities:
//!
//! - t₁ = 0 and Y = C^{−δ}·arccosh(C^{k_max/(1−γ)}),
//! - switch times 1 − tₙ = C^{−δ(E_{n−1}−1)}, strictly increasing with
//!   window ratio (1−t_{n+1})/(1−tₙ) = C^{−δγEₙ},
//! - pendulum periods M_{n−1}·(1−tₙ) = 2·arccosh(C^{k_max·Eₙ}), which fixes
//!   Mₙ = 2·arccosh(C^{k_max·E_{n+1}})·C^{δ(Eₙ−1)} and zₙ = 2Mₙ.

use thiserror::Error;

use crate::optimal_exponents;

/// Natural-log threshold beyond which a linear double would overflow.
const LN_OVERFLOW: f64 = 700.0;

/// A user-set exponent or the critical value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent {
    Auto,
    Value(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanConfig {
    pub c: f64,
    pub gamma: f64,
    pub delta: f64,
    pub mu: f64,
    pub zeta: f64,
    pub eps: f64,
    pub k_max: Exponent,
    pub lambda: Exponent,
    pub n_layers: usize,
}

impl PlanConfig {
    /// Desk-scale baseline; individual fields are overridden per scenario.
    pub fn desk(n_layers: usize) -> Self {
        PlanConfig {
            c: 10.0,
            gamma: 0.5,
            delta: 0.05,
            mu: 0.01,
            zeta: 0.01,
            eps: 0.1,
            k_max: Exponent::Auto,
            lambda: Exponent::Auto,
            n_layers,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PlanError {
    #[error("C must exceed 2, got {0}")]
    BaseTooSmall(f64),
    #[error("gamma must lie in [1/2, 1), got {0}")]
    GammaOutOfRange(f64),
    #[error("delta must be positive and at most 1, got {0}")]
    DeltaOutOfRange(f64),
    #[error("mu must be positive and at most 1, got {0}")]
    MuOutOfRange(f64),
    #[error("zeta must lie in (0, 1/4), got {0}")]
    ZetaOutOfRange(f64),
    #[error("eps must lie in (0, 1/4), got {0}")]
    EpsOutOfRange(f64),
    #[error("k_max must be at least 1/100, got {0}")]
    KMaxTooSmall(f64),
    #[error("Lambda must be positive, got {0}")]
    LambdaNotPositive(f64),
    #[error("need at least one layer")]
    NoLayers,
    #[error(
        "layer {n}: window 1 - t_{n} = exp({ln_omt}) underflows double precision; \
         reduce N, gamma, delta or C"
    )]
    TimeUnderflow { n: usize, ln_omt: f64 },
    #[error(
        "layer {n}: ramp windows overlap; need 1 - C^(-delta*gamma*E_n) > 2*zeta, \
         got {available} <= {needed}"
    )]
    RampInfeasible {
        n: usize,
        available: f64,
        needed: f64,
    },
}

/// Complete deterministic parameter plan. Per-layer arrays are padded so that
/// index n is layer n (index 0 holds the fictitious layer 0 where defined).
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSchedule {
    pub c: f64,
    pub gamma: f64,
    pub delta: f64,
    pub mu: f64,
    pub zeta: f64,
    pub eps: f64,
    pub k_max: f64,
    pub lambda_exp: f64,
    pub y: f64,
    pub n_layers: usize,
    /// Eᵢ = (1/(1−γ))ⁱ for i = 0..=N+1.
    e: Vec<f64>,
    /// ln λₙ = −Λ·Eₙ·ln C for n = 0..=N.
    ln_lambda: Vec<f64>,
    /// ln Mᵢ for i = 0..=N.
    ln_m: Vec<f64>,
    /// 1 − tₙ for n = 1..=N+1 (index 0 unused).
    omt: Vec<f64>,
    /// arccosh(C^{k_max·Eₙ}) for n = 1..=N+1 (index 0 unused).
    hat: Vec<f64>,
}

impl ParamSchedule {
    pub fn ln_c(&self) -> f64 {
        self.c.ln()
    }

    /// Scale exponent Eₙ, valid for n = 0..=N+1.
    pub fn e_n(&self, n: usize) -> f64 {
        self.e[n]
    }

    /// Cutoff scale λₙ = C^{−Λ·Eₙ}, valid for n = 0..=N.
    pub fn lambda_n(&self, n: usize) -> f64 {
        self.ln_lambda[n].exp()
    }

    pub fn ln_lambda_n(&self, n: usize) -> f64 {
        self.ln_lambda[n]
    }

    /// Pendulum amplitude Mₙ, valid for n = 0..=N.
    pub fn m_n(&self, n: usize) -> f64 {
        self.ln_m[n].exp()
    }

    pub fn ln_m_n(&self, n: usize) -> f64 {
        self.ln_m[n]
    }

    /// Density weight zₙ = 2Mₙ, valid for n = 1..=N.
    pub fn z_n(&self, n: usize) -> f64 {
        2.0 * self.m_n(n)
    }

    /// Switch time tₙ, valid for n = 1..=N+1; t₁ = 0 exactly.
    pub fn t_n(&self, n: usize) -> f64 {
        1.0 - self.omt[n]
    }

    /// 1 − tₙ without cancellation, valid for n = 1..=N+1.
    pub fn one_minus_t(&self, n: usize) -> f64 {
        self.omt[n]
    }

    /// Half pendulum period arccosh(C^{k_max·Eₙ}), valid for n = 1..=N+1.
    pub fn hat_t_max(&self, n: usize) -> f64 {
        self.hat[n]
    }

    /// Terminal minor scale ln aₙ(1) = ln bₙ(1) = Eₙ·ln C, valid for n = 0..=N.
    pub fn ln_scale_end(&self, n: usize) -> f64 {
        self.e[n] * self.ln_c()
    }

    /// Layer-n active window [tₙ, t_{n+1}].
    pub fn window(&self, n: usize) -> (f64, f64) {
        (self.t_n(n), self.t_n(n + 1))
    }

    /// Whether every linear magnitude a consumer materializes (up to
    /// aₙ·bₙ·C^{k_max·Eₙ}) fits a double. Plans violating this are still
    /// valid for exponent studies; the ODE and field layers must reject them.
    pub fn linear_scales_representable(&self) -> bool {
        (2.0 + self.k_max) * self.e[self.n_layers] * self.ln_c() < LN_OVERFLOW
    }
}

/// Materialize a log-magnitude as a linear double when representable.
pub fn materialize(ln: f64) -> Option<f64> {
    (ln.abs() < LN_OVERFLOW).then(|| ln.exp())
}

/// arccosh(e^L) for L ≥ 0, stable for arguments far beyond double range.
///
/// For large L this is L + ln 2 up to an O(e^{−2L}) correction; below the
/// threshold the direct formula ln(x + √((x−1)(x+1))) is exact enough.
pub fn arccosh_exp(ln_x: f64) -> f64 {
    debug_assert!(ln_x >= 0.0, "arccosh needs an argument >= 1");
    if ln_x > 18.5 {
        // relative error below e^{-37} < 1e-16
        ln_x + std::f64::consts::LN_2
    } else {
        let x = ln_x.exp();
        (x + ((x - 1.0) * (x + 1.0)).sqrt()).ln()
    }
}

/// Build the full schedule from a validated configuration.
pub fn plan(config: &PlanConfig) -> Result<ParamSchedule, PlanError> {
    let crit = optimal_exponents();
    let k_max = match config.k_max {
        Exponent::Auto => crit.k_max_star,
        Exponent::Value(v) => v,
    };
    let lambda_exp = match config.lambda {
        Exponent::Auto => crit.lambda_star,
        Exponent::Value(v) => v,
    };

    if !(config.c > 2.0) {
        return Err(PlanError::BaseTooSmall(config.c));
    }
    if !(config.gamma >= 0.5 && config.gamma < 1.0) {
        return Err(PlanError::GammaOutOfRange(config.gamma));
    }
    if !(config.delta > 0.0 && config.delta <= 1.0) {
        return Err(PlanError::DeltaOutOfRange(config.delta));
    }
    if !(config.mu > 0.0 && config.mu <= 1.0) {
        return Err(PlanError::MuOutOfRange(config.mu));
    }
    if !(config.zeta > 0.0 && config.zeta < 0.25) {
        return Err(PlanError::ZetaOutOfRange(config.zeta));
    }
    if !(config.eps > 0.0 && config.eps < 0.25) {
        return Err(PlanError::EpsOutOfRange(config.eps));
    }
    if !(k_max >= 0.01) {
        return Err(PlanError::KMaxTooSmall(k_max));
    }
    if !(lambda_exp > 0.0) {
        return Err(PlanError::LambdaNotPositive(lambda_exp));
    }
    if config.n_layers == 0 {
        return Err(PlanError::NoLayers);
    }

    let n = config.n_layers;
    let ln_c = config.c.ln();
    let ratio = 1.0 / (1.0 - config.gamma);

    let e: Vec<f64> = (0..=n + 1).map(|i| ratio.powi(i as i32)).collect();

    // Index 0 of omt is unused (t₀ is not defined); an infinite window keeps
    // the record comparable, unlike a NaN pad.
    let mut omt = vec![f64::INFINITY; n + 2];
    let mut hat = vec![0.0; n + 2];
    hat[0] = arccosh_exp(k_max * e[0] * ln_c);
    for i in 1..=n + 1 {
        let ln_omt = -config.delta * (e[i - 1] - 1.0) * ln_c;
        if ln_omt <= -LN_OVERFLOW {
            return Err(PlanError::TimeUnderflow { n: i, ln_omt });
        }
        omt[i] = ln_omt.exp();
        hat[i] = arccosh_exp(k_max * e[i] * ln_c);
    }

    // Plateau feasibility: the up and down ramps of layer n must not overlap,
    // i.e. t_{n+1} − tₙ > 2ζ(1−tₙ) ⟺ 1 − C^{−δγEₙ} > 2ζ.
    for i in 1..=n {
        let available = -(-config.delta * config.gamma * e[i] * ln_c).exp_m1();
        let needed = 2.0 * config.zeta;
        if available <= needed {
            return Err(PlanError::RampInfeasible {
                n: i,
                available,
                needed,
            });
        }
    }

    let ln_lambda: Vec<f64> = (0..=n).map(|i| -lambda_exp * e[i] * ln_c).collect();
    let ln_m: Vec<f64> = (0..=n)
        .map(|i| std::f64::consts::LN_2 + hat[i + 1].ln() + config.delta * (e[i] - 1.0) * ln_c)
        .collect();

    let y = (-config.delta * ln_c).exp() * arccosh_exp(k_max * e[1] * ln_c);

    let sched = ParamSchedule {
        c: config.c,
        gamma: config.gamma,
        delta: config.delta,
        mu: config.mu,
        zeta: config.zeta,
        eps: config.eps,
        k_max,
        lambda_exp,
        y,
        n_layers: n,
        e,
        ln_lambda,
        ln_m,
        omt,
        hat,
    };

    // Strict increase of tₙ is checked through 1−tₙ: near t = 1 distinct
    // windows can round to the same double in t-space while staying strictly
    // ordered in log-window space.
    for i in 1..=n {
        debug_assert!(
            sched.one_minus_t(i) > sched.one_minus_t(i + 1),
            "switch times must increase"
        );
    }
    Ok(sched)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desk() -> ParamSchedule {
        plan(&PlanConfig::desk(3)).unwrap()
    }

    #[test]
    fn first_switch_time_is_zero_exactly() {
        assert_eq!(desk().t_n(1), 0.0);
    }

    #[test]
    fn y_matches_high_precision_value() {
        // C=10, gamma=0.5, delta=0.05, k_max auto; independently evaluated at
        // 50-digit precision.
        let y = desk().y;
        assert!((y - 1.1935140126896481).abs() < 1e-15, "Y = {y}");
    }

    #[test]
    fn switch_times_match_closed_form() {
        let s = desk();
        // 1 - t_n = C^{-delta (E_{n-1}-1)}; pinned at 50-digit precision.
        assert!((s.t_n(2) - 0.108749061866254470).abs() < 1e-15);
        assert!((s.t_n(3) - 0.292054215615862089).abs() < 1e-15);
        assert!((s.t_n(4) - 0.553316407849036881).abs() < 1e-15);
    }

    #[test]
    fn amplitudes_match_high_precision_values() {
        let s = desk();
        assert!((s.m_n(0) - 2.6782894954115459).abs() < 1e-13);
        assert!((s.m_n(1) - 4.7196625793230117).abs() < 1e-13);
        assert!((s.m_n(2) - 10.0064112897014486).abs() < 1e-12);
        assert!((s.m_n(3) - 28.6221519989863119).abs() < 1e-12);
    }

    #[test]
    fn pendulum_period_identity_holds() {
        let s = desk();
        for n in 1..=s.n_layers {
            let lhs = s.m_n(n - 1) * s.one_minus_t(n);
            let rhs = 2.0 * s.hat_t_max(n);
            assert!(
                ((lhs - rhs) / rhs).abs() < 1e-14,
                "M_(n-1)(1-t_n) = 2 arccosh at n={n}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn window_ratio_is_exact_power() {
        let s = desk();
        for n in 1..=s.n_layers {
            let got = s.one_minus_t(n + 1) / s.one_minus_t(n);
            let want = (-s.delta * s.gamma * s.e_n(n) * s.ln_c()).exp();
            assert!(((got - want) / want).abs() < 1e-14, "window ratio at n={n}");
        }
    }

    #[test]
    fn z_is_twice_m() {
        let s = desk();
        for n in 1..=s.n_layers {
            assert_eq!(s.z_n(n), 2.0 * s.m_n(n));
        }
    }

    #[test]
    fn cutoff_times_scale_exceeds_one_for_subunit_lambda_exponent() {
        // lambda_n * a_n(1) = C^{(1-Lambda)E_n} > 1 whenever Lambda < 1.
        let s = desk();
        for n in 1..=s.n_layers {
            let ln = s.ln_lambda_n(n) + s.ln_scale_end(n);
            assert!(ln > 0.0, "lambda_n a_n(1) must exceed 1 at n={n}");
            let want = ((1.0 - s.lambda_exp) * s.e_n(n) * s.ln_c()).exp();
            assert!(((ln.exp() - want) / want).abs() < 1e-12);
        }
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut c = PlanConfig::desk(2);
        c.gamma = 0.4;
        assert!(matches!(plan(&c), Err(PlanError::GammaOutOfRange(_))));

        let mut c = PlanConfig::desk(2);
        c.c = 2.0;
        assert!(matches!(plan(&c), Err(PlanError::BaseTooSmall(_))));

        let mut c = PlanConfig::desk(2);
        c.k_max = Exponent::Value(0.001);
        assert!(matches!(plan(&c), Err(PlanError::KMaxTooSmall(_))));

        let mut c = PlanConfig::desk(2);
        c.zeta = 0.3;
        assert!(matches!(plan(&c), Err(PlanError::ZetaOutOfRange(_))));

        let mut c = PlanConfig::desk(2);
        c.eps = 0.25;
        assert!(matches!(plan(&c), Err(PlanError::EpsOutOfRange(_))));
    }

    #[test]
    fn overlapping_ramps_are_rejected() {
        // At C=10, delta=0.05, gamma=0.5, layer 1 offers 1-10^{-0.05} ~ 0.109
        // of plateau budget; zeta = 0.06 demands 0.12.
        let mut c = PlanConfig::desk(2);
        c.zeta = 0.06;
        assert!(matches!(
            plan(&c),
            Err(PlanError::RampInfeasible { n: 1, .. })
        ));
    }

    #[test]
    fn runaway_scales_are_rejected() {
        let mut c = PlanConfig::desk(4);
        c.gamma = 0.9; // E_4 = 10^4, so 1 - t_5 = 10^{-500} * 10^{-...} underflows
        assert!(matches!(plan(&c), Err(PlanError::TimeUnderflow { .. })));
    }

    #[test]
    fn exponent_study_plans_flag_unmaterializable_scales() {
        let mut c = PlanConfig::desk(1);
        c.gamma = 0.999;
        c.delta = 1e-3;
        let s = plan(&c).unwrap();
        assert!(!s.linear_scales_representable());
        assert!(plan(&PlanConfig::desk(3))
            .unwrap()
            .linear_scales_representable());
    }

    #[test]
    fn arccosh_branches_agree_at_threshold() {
        let lo = arccosh_exp(18.4999);
        let hi = arccosh_exp(18.5001);
        assert!((hi - lo - 0.0002).abs() < 1e-10);
        // Spot value: arccosh(10) = ln(10 + sqrt(99))
        let v = arccosh_exp(10f64.ln());
        assert!((v - (10.0 + 99f64.sqrt()).ln()).abs() < 1e-15);
    }

    #[test]
    fn materialize_respects_overflow_threshold() {
        assert!(materialize(600.0).is_some());
        assert!(materialize(-600.0).is_some());
        assert!(materialize(750.0).is_none());
    }
}
