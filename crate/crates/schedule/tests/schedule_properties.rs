//! Property tests for the parameter plan: determinism, monotone switch
//! times, and the closure identities across randomized valid configurations.

use proptest::prelude::*;
use schedule::{feasibility_margins, plan, Exponent, PlanConfig};

fn valid_config() -> impl Strategy<Value = PlanConfig> {
    (
        3.0f64..64.0,   // C
        0.5f64..0.75,   // gamma
        0.01f64..0.2,   // delta
        0.001f64..0.1,  // mu
        0.001f64..0.02, // zeta
        0.01f64..0.24,  // eps
        1usize..=4,     // N
    )
        .prop_map(|(c, gamma, delta, mu, zeta, eps, n_layers)| PlanConfig {
            c,
            gamma,
            delta,
            mu,
            zeta,
            eps,
            k_max: Exponent::Auto,
            lambda: Exponent::Auto,
            n_layers,
        })
}

proptest! {
    #[test]
    fn plan_is_deterministic(cfg in valid_config()) {
        if let (Ok(a), Ok(b)) = (plan(&cfg), plan(&cfg)) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn switch_times_increase_and_contract(cfg in valid_config()) {
        if let Ok(s) = plan(&cfg) {
            prop_assert_eq!(s.t_n(1), 0.0);
            for n in 1..=s.n_layers {
                // Ordering is asserted on 1 - t_n: deep layers can round to
                // t = 1.0 in linear time while windows stay strictly ordered.
                let ratio = s.one_minus_t(n + 1) / s.one_minus_t(n);
                prop_assert!(ratio < 1.0, "windows must contract at n={}", n);
                prop_assert!(s.t_n(n) <= s.t_n(n + 1), "t_n must not decrease at n={}", n);
            }
        }
    }

    #[test]
    fn pendulum_period_identity(cfg in valid_config()) {
        if let Ok(s) = plan(&cfg) {
            for n in 1..=s.n_layers {
                let lhs = s.m_n(n - 1) * s.one_minus_t(n);
                let rhs = 2.0 * s.hat_t_max(n);
                prop_assert!(((lhs - rhs) / rhs).abs() < 1e-12,
                    "period identity at n={}: {} vs {}", n, lhs, rhs);
            }
        }
    }

    #[test]
    fn amplitudes_increase(cfg in valid_config()) {
        if let Ok(s) = plan(&cfg) {
            for n in 1..=s.n_layers {
                prop_assert!(s.m_n(n) > s.m_n(n - 1), "M_n must increase at n={}", n);
            }
        }
    }

    #[test]
    fn feasibility_slack_decreases_in_alpha(cfg in valid_config(), frac in 0.1f64..0.9) {
        if let Ok(s) = plan(&cfg) {
            let crit = schedule::optimal_exponents();
            let lo = feasibility_margins(&s, frac * 0.5 * crit.alpha_star);
            let hi = feasibility_margins(&s, frac * crit.alpha_star);
            // Every alpha-monotone inequality has no more slack at larger alpha.
            for (a, b) in lo.items.iter().zip(hi.items.iter()) {
                if a.name != "vorticity transport (alpha-free)" {
                    prop_assert!(b.slack <= a.slack + 1e-12,
                        "{}: slack must not grow with alpha", a.name);
                }
            }
        }
    }
}
