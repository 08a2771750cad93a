//! Diagnostic dump of the regularity sweep at desk scale and at the
//! tight-margin edge configuration.

use dynamics::integrate_chain;
use schedule::{optimal_exponents, plan, Exponent, PlanConfig};
use std::time::Instant;
use verify::regularity_sweep;

fn run(label: &str, cfg: &PlanConfig, alphas: &[f64], grid: usize) {
    println!("== {label} ==");
    let t0 = Instant::now();
    let sched = match plan(cfg) {
        Ok(s) => s,
        Err(e) => {
            println!("plan failed: {e}");
            return;
        }
    };
    let traj = match integrate_chain(&sched, 2, 1e-11) {
        Ok(t) => t,
        Err(e) => {
            println!("integrate failed: {e}");
            return;
        }
    };
    println!("planned+integrated in {:?}", t0.elapsed());
    let (t2, t3) = (sched.t_n(2), sched.t_n(3));
    let times = [0.5 * t2, 0.5 * (t2 + t3), 0.5 * (t3 + 1.0)];
    println!("t2={t2:.5} t3={t3:.5} times={times:?}");
    let t0 = Instant::now();
    let table = match regularity_sweep(&traj, 2, alphas, &times, grid) {
        Ok(t) => t,
        Err(e) => {
            println!("sweep failed: {e}");
            return;
        }
    };
    println!("sweep elapsed {:?}", t0.elapsed());
    for r in &table.rows {
        println!(
            "alpha={:.6} n={} omega_norm={:.6e} rho_norm={:.6e} dom_omega={}:{:.6e} dom_rho={}:{:.6e}",
            r.alpha, r.n, r.omega_norm, r.rho_norm,
            r.dominant_omega.0, r.dominant_omega.1,
            r.dominant_rho.0, r.dominant_rho.1
        );
    }
    for &a in alphas {
        println!(
            "alpha={:.6}: omega_ratio={:?} rho_ratio={:?} dom_omega_ratio={:?} dom_rho_ratio={:?}",
            a,
            table.omega_ratio(a, 2),
            table.rho_ratio(a, 2),
            table.dominant_omega_ratio(a, 2),
            table.dominant_rho_ratio(a, 2)
        );
    }
}

fn main() {
    let alpha_star = optimal_exponents().alpha_star;
    run(
        "desk C=10 gamma=0.5",
        &PlanConfig::desk(2),
        &[0.5 * alpha_star, 0.99],
        32,
    );
    let edge = PlanConfig {
        c: 2.0,
        gamma: 0.965,
        delta: 1e-3,
        mu: 1e-3,
        zeta: 1e-3,
        eps: 0.1,
        k_max: Exponent::Auto,
        lambda: Exponent::Auto,
        n_layers: 2,
    };
    run("edge C=2 gamma=0.965", &edge, &[0.5 * alpha_star, 0.99], 32);
}
