//! One function per subcommand. Each writes its artifacts into the run's
//! output directory and prints a human-readable summary.

use dynamics::{integrate_chain, LayerChainTrajectory};
use fields::{support_box, total_fields};
use forces::{density_force, vorticity_force};
use pendulum::{limit_profile, IdealLayerModel};
use schedule::{optimal_exponents, plan, ParamSchedule};
use verify::{
    blowup_tracker, convergence_probe, regularity_sweep, run_invariant_suite, term_exponents,
    CheckResult, EnvelopeConfig, ProbeConfig, ProbeError, SuiteConfig, SweepError,
};

use crate::config::RunConfig;
use crate::output::{cell, svg_plot, write_csv, write_svg, Curve, PALETTE};
use crate::CliError;

fn planned(cfg: &RunConfig) -> Result<ParamSchedule, CliError> {
    plan(&cfg.plan_config()).map_err(|e| CliError::config(e.to_string()))
}

fn integrated(cfg: &RunConfig) -> Result<(ParamSchedule, LayerChainTrajectory), CliError> {
    let sched = planned(cfg)?;
    let traj = integrate_chain(&sched, cfg.n_layers, cfg.ode_tol)
        .map_err(|e| CliError::numerical(e.to_string()))?;
    Ok((sched, traj))
}

/// Midpoint of layer n's active window [tₙ, t_{n+1}].
fn window_mid(sched: &ParamSchedule, n: usize) -> f64 {
    let (lo, hi) = sched.window(n);
    0.5 * (lo + hi)
}

pub fn plan_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let sched = planned(cfg)?;
    let crit = optimal_exponents();
    println!(
        "alpha_star = {:.17} (= sqrt(4/3) - 1, the critical Holder index)",
        crit.alpha_star
    );
    println!(
        "Lambda_star = {:.17}   k_max_star = {:.17}",
        crit.lambda_star, crit.k_max_star
    );
    println!(
        "resolved exponents: k_max = {:.17}, Lambda = {:.17}",
        sched.k_max, sched.lambda_exp
    );
    println!("Y = {:.17}   M_0 = {:.17}", sched.y, sched.m_n(0));
    println!(
        "{:>2} {:>12} {:>12} {:>12} {:>13} {:>9} {:>12} {:>9} {:>12} {:>10}",
        "n", "E_n", "t_n", "1-t_n", "lambda_n", "logC", "M_n", "logC", "z_n", "hat_t_max"
    );
    let ln_c = sched.ln_c();
    let mut rows = Vec::new();
    for n in 1..=cfg.n_layers {
        let logc_lambda = sched.ln_lambda_n(n) / ln_c;
        let logc_m = sched.ln_m_n(n) / ln_c;
        println!(
            "{:>2} {:>12.5} {:>12.8} {:>12.5e} {:>13.5e} {:>9.4} {:>12.5} {:>9.4} {:>12.5} {:>10.5}",
            n,
            sched.e_n(n),
            sched.t_n(n),
            sched.one_minus_t(n),
            sched.lambda_n(n),
            logc_lambda,
            sched.m_n(n),
            logc_m,
            sched.z_n(n),
            sched.hat_t_max(n)
        );
        rows.push(vec![
            n.to_string(),
            cell(sched.e_n(n)),
            cell(sched.t_n(n)),
            cell(sched.one_minus_t(n)),
            cell(sched.lambda_n(n)),
            cell(logc_lambda),
            cell(sched.m_n(n)),
            cell(logc_m),
            cell(sched.z_n(n)),
            cell(sched.hat_t_max(n)),
        ]);
    }
    write_csv(
        &cfg.out_dir.join("plan.csv"),
        &cfg.hash(),
        &[
            format!("alpha_star = {}", cell(crit.alpha_star)),
            format!("k_max = {}", cell(sched.k_max)),
            format!("lambda_exp = {}", cell(sched.lambda_exp)),
            format!("y = {}", cell(sched.y)),
            format!("m_0 = {}", cell(sched.m_n(0))),
        ],
        "n,e_n,t_n,one_minus_t,lambda_n,logc_lambda_n,m_n,logc_m_n,z_n,hat_t_max",
        &rows,
    )?;
    println!("wrote {}", cfg.out_dir.join("plan.csv").display());
    Ok(())
}

pub fn simulate_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let (sched, traj) = integrated(cfg)?;
    let hash = cfg.hash();
    let samples = cfg.samples.max(2);

    let rows = traj
        .sample_rows(samples)
        .map_err(|e| CliError::numerical(e.to_string()))?;
    let csv_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                cell(r.t),
                cell(r.hat_t),
                cell(r.center1),
                cell(r.k),
                cell(r.ln_b),
                cell(r.amp_product),
            ]
        })
        .collect();
    write_csv(
        &cfg.out_dir.join("trajectory.csv"),
        &hash,
        &[],
        "n,t,hat_t,center1,k_n,ln_b_n,B_n_times_a2b2",
        &csv_rows,
    )?;

    // Per-layer angle profile sin(a_{n-1}(1)·Ξ⁽ⁿ⁾) and its ideal overlay.
    let mut profile_rows = Vec::new();
    let mut sin_curves = Vec::new();
    let mut k_curves = Vec::new();
    for n in 1..=cfg.n_layers {
        let a_prev = sched.ln_scale_end(n - 1).exp();
        let model = IdealLayerModel::from_schedule(&sched, n);
        let color = PALETTE[(n - 1) % PALETTE.len()];
        let mut sin_pts = Vec::with_capacity(samples);
        let mut k_pts = Vec::with_capacity(samples);
        let mut sin_ideal = Vec::with_capacity(samples);
        let mut k_ideal = Vec::with_capacity(samples);
        for i in 0..samples {
            let hat = i as f64 / (samples - 1) as f64;
            let t = sched.t_n(n) + sched.one_minus_t(n) * hat;
            let xi = traj
                .xi(n, t)
                .map_err(|e| CliError::numerical(e.to_string()))?;
            let k = traj
                .k(n, t)
                .map_err(|e| CliError::numerical(e.to_string()))?;
            let p = traj
                .amp_product(n, t)
                .map_err(|e| CliError::numerical(e.to_string()))?;
            let sin_axi = (a_prev * xi).sin();
            profile_rows.push(vec![
                n.to_string(),
                cell(t),
                cell(hat),
                cell(k),
                cell(sin_axi),
                cell(p),
            ]);
            sin_pts.push((hat, sin_axi));
            k_pts.push((hat, k));
            sin_ideal.push((hat, model.ideal_xi(hat)));
            k_ideal.push((hat, model.ideal_k(hat)));
        }
        sin_curves.push(Curve {
            label: format!("layer {n}"),
            color,
            dashed: false,
            points: sin_pts,
        });
        sin_curves.push(Curve {
            label: format!("ideal {n}"),
            color,
            dashed: true,
            points: sin_ideal,
        });
        k_curves.push(Curve {
            label: format!("layer {n}"),
            color,
            dashed: false,
            points: k_pts,
        });
        k_curves.push(Curve {
            label: format!("ideal {n}"),
            color,
            dashed: true,
            points: k_ideal,
        });
    }
    // Tent limit profile of the aspect exponent, common to every layer.
    k_curves.push(Curve {
        label: "tent limit".into(),
        color: "#000000",
        dashed: true,
        points: (0..samples)
            .map(|i| {
                let hat = i as f64 / (samples - 1) as f64;
                (hat, limit_profile(hat, sched.k_max))
            })
            .collect(),
    });

    write_csv(
        &cfg.out_dir.join("profiles.csv"),
        &hash,
        &[],
        "n,t,hat_t,k_n,sin_a_xi,B_n_times_a2b2",
        &profile_rows,
    )?;
    write_svg(
        &cfg.out_dir.join("profile_sin.svg"),
        &svg_plot(
            "sin(a_prev(1) Xi) vs ideal sech profile",
            "hat t",
            "sin(a Xi)",
            &sin_curves,
        ),
    )?;
    write_svg(
        &cfg.out_dir.join("profile_k.svg"),
        &svg_plot(
            "aspect exponent k_n vs ideal and tent profiles",
            "hat t",
            "k_n",
            &k_curves,
        ),
    )?;
    println!(
        "wrote trajectory.csv, profiles.csv, profile_sin.svg, profile_k.svg in {}",
        cfg.out_dir.display()
    );
    Ok(())
}

pub fn fields_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let (sched, traj) = integrated(cfg)?;
    let t = cfg.time.unwrap_or_else(|| window_mid(&sched, cfg.n_layers));
    let (bx, by) = match cfg.field_box {
        Some([a, b, c, d]) => ([a, b], [c, d]),
        None => support_box(&traj).map_err(|e| CliError::numerical(e.to_string()))?,
    };
    let (nx, ny) = (cfg.grid_nx.max(2), cfg.grid_ny.max(2));
    let mut rows = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        let x1 = bx[0] + (bx[1] - bx[0]) * i as f64 / (nx - 1) as f64;
        for j in 0..ny {
            let x2 = by[0] + (by[1] - by[0]) * j as f64 / (ny - 1) as f64;
            let s = total_fields(&traj, cfg.n_layers, t, [x1, x2])
                .map_err(|e| CliError::numerical(e.to_string()))?;
            rows.push(vec![
                cell(t),
                cell(x1),
                cell(x2),
                cell(s.psi),
                cell(s.u[0]),
                cell(s.u[1]),
                cell(s.omega),
                cell(s.rho),
            ]);
        }
    }
    write_csv(
        &cfg.out_dir.join("fields.csv"),
        &cfg.hash(),
        &[format!(
            "box = {},{},{},{}",
            cell(bx[0]),
            cell(bx[1]),
            cell(by[0]),
            cell(by[1])
        )],
        "t,x1,x2,psi,u1,u2,omega,rho",
        &rows,
    )?;
    println!(
        "wrote {} ({}x{} grid at t = {t})",
        cfg.out_dir.join("fields.csv").display(),
        nx,
        ny
    );
    Ok(())
}

pub fn forces_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let (sched, traj) = integrated(cfg)?;
    let g = cfg.forces_grid.max(2);
    let mut rows = Vec::new();
    for n in 1..=cfg.n_layers {
        let t = cfg.time.unwrap_or_else(|| window_mid(&sched, n));
        if t <= sched.t_n(n) {
            continue;
        }
        let c = traj
            .center1(n, t)
            .map_err(|e| CliError::numerical(e.to_string()))?;
        let a = traj
            .a(n, t)
            .map_err(|e| CliError::numerical(e.to_string()))?;
        let b = traj
            .b(n, t)
            .map_err(|e| CliError::numerical(e.to_string()))?;
        let half = 2.5 * std::f64::consts::PI;
        for i in 0..g {
            let x1 = c + (-half + 2.0 * half * i as f64 / (g - 1) as f64) / a;
            for j in 0..g {
                let x2 = (-half + 2.0 * half * j as f64 / (g - 1) as f64) / b;
                let x = [x1, x2];
                let vf = vorticity_force(&traj, n, t, x)
                    .map_err(|e| CliError::numerical(e.to_string()))?;
                let df = density_force(&traj, n, t, x)
                    .map_err(|e| CliError::numerical(e.to_string()))?;
                for (name, v) in [
                    ("tau", vf.tau),
                    ("omega_transport", vf.transport),
                    ("omega_old_transport", vf.old_transport),
                    ("omega_quadratic", vf.quadratic),
                    ("f_omega", vf.f_omega),
                    ("rho_time_derivative", df.time_derivative),
                    ("rho_transport", df.transport),
                    ("rho_old_transport", df.old_transport),
                    ("rho_quadratic", df.quadratic),
                    ("f_rho", df.f_rho),
                ] {
                    rows.push(vec![
                        n.to_string(),
                        cell(t),
                        cell(x1),
                        cell(x2),
                        name.to_string(),
                        cell(v),
                    ]);
                }
            }
        }
    }
    write_csv(
        &cfg.out_dir.join("forces.csv"),
        &cfg.hash(),
        &[],
        "n,t,x1,x2,term_name,value",
        &rows,
    )?;
    println!("wrote {}", cfg.out_dir.join("forces.csv").display());
    Ok(())
}

pub fn verify_cmd(cfg: &RunConfig, k_perturbation: f64) -> Result<i32, CliError> {
    let (_, traj) = integrated(cfg)?;
    let mut rep = run_invariant_suite(
        &traj,
        cfg.n_layers,
        &SuiteConfig {
            k_perturbation,
            ..SuiteConfig::default()
        },
    );

    // Fold the blow-up tracker into the same report.
    let blow =
        blowup_tracker(&traj, cfg.n_layers, 16).map_err(|e| CliError::numerical(e.to_string()))?;
    for l in &blow.layers {
        rep.push(CheckResult {
            name: format!("density gradient integral >= 0.95 x 2M_{}", l.n),
            pass: l.ratio_to_2m >= 0.95,
            measured: l.ratio_to_2m,
            tolerance: 0.95,
            detail: "lower bound: measured integral / 2M_n".into(),
        });
        rep.push(CheckResult::bounded(
            &format!("density vanishes at switch t_{}", l.n + 1),
            l.density_max_at_switch.abs(),
            0.0,
        ));
        if l.n >= 2 {
            rep.push(CheckResult {
                name: format!("amplitude M_{} exceeds M_{}", l.n, l.n - 1),
                pass: l.m_ratio > 1.0,
                measured: l.m_ratio,
                tolerance: 1.0,
                detail: format!("predicted ratio {}", cell(l.m_ratio_predicted)),
            });
        }
    }

    print!("{}", rep.render());
    let path = cfg.out_dir.join("verify.csv");
    std::fs::write(&path, format!("# config {}\n{}", cfg.hash(), rep.to_csv()))
        .map_err(|e| CliError::config(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());

    let failures = rep.failures();
    Ok(if failures == 0 {
        0
    } else {
        (2 + failures).min(255) as i32
    })
}

pub fn probe_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let pcfg = ProbeConfig {
        gamma: cfg.gamma,
        delta: cfg.delta,
        mu: cfg.mu,
        zeta: cfg.zeta,
        eps: cfg.eps,
        time_samples: cfg.samples.max(2),
        tol: cfg.ode_tol,
        ..ProbeConfig::default()
    };
    let probe = convergence_probe(&pcfg, &cfg.c_list, cfg.probe_n).map_err(|e| match e {
        ProbeError::Plan(p) => CliError::config(p.to_string()),
        ProbeError::TooFewBases(_) => CliError::config(e.to_string()),
        ProbeError::Dynamics(d) => CliError::numerical(d.to_string()),
    })?;

    println!("ideal-model convergence, layer n = {}", probe.n);
    let mut rows = Vec::new();
    for (i, &c) in probe.c_values.iter().enumerate() {
        println!(
            "C = {c:>10}: |k - ideal| = {:.6e}   a|Xi - ideal| = {:.6e}   bound = {:.6e}",
            probe.k_distance[i], probe.xi_distance[i], probe.xi_bound[i]
        );
        rows.push(vec![
            cell(c),
            cell(probe.k_distance[i]),
            cell(probe.xi_distance[i]),
            cell(probe.xi_bound[i]),
        ]);
    }
    println!(
        "log-log slopes: k {:.4}, Xi {:.4}; predicted {:.4}",
        probe.slope_k, probe.slope_xi, probe.predicted_slope
    );
    write_csv(
        &cfg.out_dir.join("probe.csv"),
        &cfg.hash(),
        &[
            format!("n = {}", probe.n),
            format!("slope_k = {}", cell(probe.slope_k)),
            format!("slope_xi = {}", cell(probe.slope_xi)),
            format!("predicted_slope = {}", cell(probe.predicted_slope)),
        ],
        "c,k_distance,xi_distance,xi_bound",
        &rows,
    )?;
    println!("wrote {}", cfg.out_dir.join("probe.csv").display());
    Ok(())
}

pub fn sweep_cmd(cfg: &RunConfig) -> Result<(), CliError> {
    let (sched, traj) = integrated(cfg)?;
    // One time inside each layer's window plus one in the common tail.
    let mut times: Vec<f64> = (1..=cfg.n_layers).map(|n| window_mid(&sched, n)).collect();
    times.push(0.5 * (sched.t_n(cfg.n_layers + 1) + 1.0));

    let table = regularity_sweep(&traj, cfg.n_layers, &cfg.alphas, &times, cfg.sweep_grid)
        .map_err(|e| match e {
            SweepError::Dynamics(d) => CliError::numerical(d.to_string()),
            SweepError::Norm(n) => CliError::config(n.to_string()),
        })?;

    let mut rows = Vec::new();
    for r in &table.rows {
        println!(
            "alpha = {:.6}  n = {}  |f_omega|_Ca = {:.6e}  |f_rho|_C1a = {:.6e}  \
             dominant: {} {:.6e} / {} {:.6e}",
            r.alpha,
            r.n,
            r.omega_norm,
            r.rho_norm,
            r.dominant_omega.0,
            r.dominant_omega.1,
            r.dominant_rho.0,
            r.dominant_rho.1
        );
        rows.push(vec![
            cell(r.alpha),
            r.n.to_string(),
            cell(r.omega_norm),
            cell(r.rho_norm),
            r.dominant_omega.0.clone(),
            cell(r.dominant_omega.1),
            r.dominant_rho.0.clone(),
            cell(r.dominant_rho.1),
        ]);
    }
    for &alpha in &cfg.alphas {
        for n in 2..=cfg.n_layers {
            println!(
                "alpha = {alpha:.6}  r({n}) omega = {:?}  rho = {:?}  \
                 dominant omega = {:?}  dominant rho = {:?}",
                table.omega_ratio(alpha, n),
                table.rho_ratio(alpha, n),
                table.dominant_omega_ratio(alpha, n),
                table.dominant_rho_ratio(alpha, n)
            );
        }
    }
    write_csv(
        &cfg.out_dir.join("sweep.csv"),
        &cfg.hash(),
        &[format!(
            "times = {}",
            times.iter().map(|t| cell(*t)).collect::<Vec<_>>().join(";")
        )],
        "alpha,n,omega_norm,rho_norm,dominant_omega_term,dominant_omega_value,\
         dominant_rho_term,dominant_rho_value",
        &rows,
    )?;

    // Scaling-envelope exponents of each force term at the run's margins:
    // negative means the term's norm envelope decays layer over layer.
    let env = EnvelopeConfig {
        gamma: cfg.gamma,
        delta: cfg.delta,
        mu: cfg.mu,
        zeta: cfg.zeta,
        k_max: sched.k_max,
        lambda: sched.lambda_exp,
    };
    let mut env_rows = Vec::new();
    for &alpha in &cfg.alphas {
        let e = term_exponents(&env, alpha);
        println!(
            "alpha = {alpha:.6}  envelope exponents: tau {:+.4} Q_w {:+.4} O_w {:+.4} \
             T_w {:+.4} | dt_rho {:+.4} Q_r {:+.4} T_r {:+.4}  max (w, r) = ({:+.4}, {:+.4})",
            e.tau,
            e.q_omega,
            e.o_omega,
            e.t_omega,
            e.dt_rho,
            e.q_rho,
            e.t_rho,
            e.max_omega(),
            e.max_rho()
        );
        env_rows.push(vec![
            cell(alpha),
            cell(e.tau),
            cell(e.q_omega),
            cell(e.o_omega),
            cell(e.t_omega),
            cell(e.dt_rho),
            cell(e.q_rho),
            cell(e.t_rho),
            cell(e.max_omega()),
            cell(e.max_rho()),
        ]);
    }
    write_csv(
        &cfg.out_dir.join("envelope.csv"),
        &cfg.hash(),
        &[],
        "alpha,tau,q_omega,o_omega,t_omega,dt_rho,q_rho,t_rho,max_omega,max_rho",
        &env_rows,
    )?;
    println!(
        "wrote sweep.csv and envelope.csv in {}",
        cfg.out_dir.display()
    );
    Ok(())
}
