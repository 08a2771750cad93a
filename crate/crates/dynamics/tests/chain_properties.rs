//! Property-based checks of the chain over a range of base constants.

use dynamics::integrate_chain;
use proptest::prelude::*;
use schedule::{plan, Exponent, PlanConfig};

fn config(c: f64) -> PlanConfig {
    PlanConfig {
        c,
        gamma: 0.5,
        delta: 0.05,
        mu: 0.01,
        zeta: 0.01,
        eps: 0.1,
        k_max: Exponent::Auto,
        lambda: Exponent::Auto,
        n_layers: 2,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn chain_invariants_hold_across_bases(c in 6.0f64..48.0) {
        let sched = plan(&config(c)).unwrap();
        let traj = integrate_chain(&sched, 2, 1e-10).unwrap();
        for n in 1..=2usize {
            // terminal aspect exponent vanishes
            prop_assert!(traj.k(n, 1.0).unwrap().abs() < 1e-8);
            // conservation and monotone amplitude along the window
            let mut last_p = -1.0;
            for i in 0..=20 {
                let t = sched.t_n(n)
                    + sched.one_minus_t(n) * i as f64 / 20.0;
                let drift = traj.ln_a(n, t).unwrap() + traj.ln_b(n, t).unwrap()
                    - 2.0 * sched.ln_scale_end(n);
                prop_assert!(drift.abs() < 1e-8, "ab drift {} at {}", drift, t);
                let p = traj.amp_product(n, t).unwrap();
                prop_assert!(p + 1e-12 >= last_p, "amplitude not monotone at t={}", t);
                prop_assert!(p >= 0.0 && p <= sched.z_n(n) * (1.0 + 1e-12));
                last_p = p;
            }
            prop_assert!(traj.h_total(n) > 0.0);
        }
    }
}
