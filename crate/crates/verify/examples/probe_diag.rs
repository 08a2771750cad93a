//! Diagnostic dump of ideal-model distances per base constant.

use dynamics::integrate_chain;
use pendulum::IdealLayerModel;
use schedule::{plan, Exponent, PlanConfig};
use std::f64::consts::PI;

fn main() {
    for n in [2usize, 3] {
        println!("== layer {n} ==");
        for c in [8.0f64, 16.0, 32.0, 64.0, 256.0, 1e4, 1e6, 1e8, 1e10] {
            let sched = plan(&PlanConfig {
                c,
                gamma: 0.5,
                delta: 0.05,
                mu: 0.01,
                zeta: 0.01,
                eps: 0.1,
                k_max: Exponent::Auto,
                lambda: Exponent::Auto,
                n_layers: n,
            })
            .unwrap();
            let traj = integrate_chain(&sched, n, 1e-11).unwrap();
            let model = IdealLayerModel::from_schedule(&sched, n);
            let a_prev = sched.ln_scale_end(n - 1).exp();
            let (t_n, omt) = (sched.t_n(n), sched.one_minus_t(n));
            let mut dk = 0.0f64;
            let mut dxi_full = 0.0f64;
            let mut dxi_half = 0.0f64;
            let mut arg_full = 0.0;
            for i in 0..=400 {
                let hat = i as f64 / 400.0;
                let t = t_n + omt * hat;
                dk = dk.max((traj.k(n, t).unwrap() - model.ideal_k(hat)).abs());
                let xi_ideal = model.ideal_xi(hat).min(1.0);
                let f_ideal = if hat <= 0.5 {
                    xi_ideal.asin()
                } else {
                    PI - xi_ideal.asin()
                };
                let d = (a_prev * traj.xi(n, t).unwrap() - f_ideal).abs();
                if hat <= 0.5 {
                    dxi_half = dxi_half.max(d);
                }
                if d > dxi_full {
                    dxi_full = d;
                    arg_full = hat;
                }
            }
            let f_end = a_prev * traj.xi(n, 1.0).unwrap();
            println!(
                "C={c:>4}  dk={dk:.3e}  dxi={dxi_full:.3e} (at hat={arg_full:.3})  dxi_half={dxi_half:.3e}  F(1)={f_end:.6}"
            );
        }
    }
}
