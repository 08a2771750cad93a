//! The invariant suite: every checkable identity of the dynamics, fields and
//! forces modules, executed against an integrated trajectory.

use dynamics::LayerChainTrajectory;
use fields::{layer_fields, support_box, total_fields};
use forces::{density_force, force_sum, residual_oracle};
use std::f64::consts::PI;

use crate::report::{CheckResult, InvariantReport};

/// Suite configuration. `k_perturbation` injects a fault into the measured
/// terminal aspect exponents; it exists so the suite can prove it would
/// catch a corrupted trajectory (a healthy run uses 0).
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub k_perturbation: f64,
    pub samples_per_layer: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            k_perturbation: 0.0,
            samples_per_layer: 41,
        }
    }
}

fn layer_times(traj: &LayerChainTrajectory, n: usize, count: usize) -> Vec<f64> {
    let s = traj.schedule();
    (0..count)
        .map(|i| s.t_n(n) + s.one_minus_t(n) * i as f64 / (count - 1) as f64)
        .collect()
}

pub fn run_invariant_suite(
    traj: &LayerChainTrajectory,
    n_layers: usize,
    cfg: &SuiteConfig,
) -> InvariantReport {
    let mut rep = InvariantReport::default();
    let s = traj.schedule();
    let count = cfg.samples_per_layer;

    // Aspect product conservation and terminal exponents.
    for n in 1..=n_layers {
        let mut drift = 0.0f64;
        for &t in &layer_times(traj, n, count) {
            let d = traj.ln_a(n, t).unwrap() + traj.ln_b(n, t).unwrap() - 2.0 * s.ln_scale_end(n);
            drift = drift.max(d.abs());
        }
        rep.push(CheckResult::bounded(
            &format!("aspect product a_{n} b_{n} conserved"),
            drift,
            1e-9,
        ));
        rep.push(CheckResult::bounded(
            &format!("terminal aspect exponent k_{n}(1) = 0"),
            (traj.k(n, 1.0).unwrap() + cfg.k_perturbation).abs(),
            1e-9,
        ));
        let want = 2.0 * s.m_n(n);
        let got = traj.amp_product(n, 1.0).unwrap();
        rep.push(CheckResult::bounded(
            &format!("terminal amplitude B_{n}(1)(a^2+b^2) = 2 M_{n}"),
            ((got - want) / want).abs(),
            1e-10,
        ));
    }

    // Center confinement and the trap region.
    for n in 1..=n_layers {
        let mut conf = 0.0f64;
        let mut trap_lo = f64::INFINITY;
        let mut trap_hi = 0.0f64;
        let a_prev = s.ln_scale_end(n - 1).exp();
        for &t in &layer_times(traj, n, count) {
            for m in 1..=n {
                let sep = (traj.center1(n, t).unwrap() - traj.center1(m, t).unwrap()).abs();
                conf = conf.max(sep * traj.a(m, t).unwrap() / (8.0 * PI));
            }
            let f = a_prev * traj.xi(n, t).unwrap();
            trap_lo = trap_lo.min(f);
            trap_hi = trap_hi.max(f);
        }
        rep.push(CheckResult::bounded(
            &format!("center confinement layer {n} (fraction of 8 pi / a_m)"),
            conf,
            1.0,
        ));
        rep.push(
            CheckResult::bounded(
                &format!("pendulum angle layer {n} inside (0, 3 pi / 2)"),
                trap_hi / (1.5 * PI),
                1.0,
            )
            .with_detail(format!("min angle {trap_lo:.3e}")),
        );
        if trap_lo <= 0.0 {
            rep.push(CheckResult::bounded(
                &format!("pendulum angle layer {n} positive"),
                -trap_lo,
                0.0,
            ));
        }
    }

    // Freezing after a layer's window closes. The bound C^{-delta gamma E_m/2}
    // presumes the tent has decayed (C^{delta gamma E_m} >= 2); layers still
    // outside that regime are reported without being failed, with the tent
    // prediction C^{k_m(t) E_m ln C} - 1 alongside.
    for m in 1..=n_layers {
        let t_close = s.t_n(m + 1);
        let mut ratio = 0.0f64;
        let mut k_peak = 0.0f64;
        let b_end = traj.ln_b(m, 1.0).unwrap();
        for i in 0..count {
            let t = t_close + (1.0 - t_close) * i as f64 / (count - 1) as f64;
            ratio = ratio.max(((traj.ln_b(m, t).unwrap() - b_end).exp() - 1.0).abs());
            k_peak = k_peak.max(traj.k(m, t).unwrap().abs());
        }
        let regime = s.delta * s.gamma * s.e_n(m) * s.ln_c() >= std::f64::consts::LN_2;
        let bound = (-0.5 * s.delta * s.gamma * s.e_n(m) * s.ln_c()).exp();
        if m == 1 || regime {
            rep.push(CheckResult::bounded(
                &format!("layer {m} frozen after its window"),
                ratio,
                bound,
            ));
        } else {
            let tent = (k_peak * s.e_n(m) * s.ln_c()).exp() - 1.0;
            rep.push(CheckResult::informational(
                &format!("layer {m} freezing (outside asymptotic regime)"),
                ratio,
                format!("asymptotic bound {bound:.3e}; tent prediction {tent:.3e}"),
            ));
        }
    }

    // Compact support: exterior ring at 20 times.
    let (bx, by) = support_box(traj).unwrap();
    let mut exterior = 0.0f64;
    for i in 0..20 {
        let t = 0.02 + 0.96 * i as f64 / 19.0;
        for k in 0..12 {
            let ang = 2.0 * PI * k as f64 / 12.0;
            let x = [
                0.5 * (bx[0] + bx[1]) + 0.56 * (bx[1] - bx[0]) * ang.cos(),
                0.56 * (by[1] - by[0]) * ang.sin(),
            ];
            if x[0] > bx[0] && x[0] < bx[1] && x[1] > by[0] && x[1] < by[1] {
                continue;
            }
            let smp = total_fields(traj, n_layers, t, x).unwrap();
            for v in [smp.psi, smp.u[0], smp.u[1], smp.omega, smp.rho] {
                exterior = exterior.max(v.abs());
            }
        }
    }
    rep.push(CheckResult::bounded(
        "fields vanish outside the support box",
        exterior,
        0.0,
    ));

    // Parity in x2 and the structural force zeros.
    let mut parity = 0.0f64;
    let mut o_rho = 0.0f64;
    let mut f_odd = 0.0f64;
    for &t in &[0.15, 0.45, 0.85] {
        let c = traj.center1(1, t).unwrap();
        for &dx in &[0.4, 1.9, -2.3] {
            for &y in &[0.3, 1.4, 2.6] {
                let (p, m) = (
                    total_fields(traj, n_layers, t, [c + dx, y]).unwrap(),
                    total_fields(traj, n_layers, t, [c + dx, -y]).unwrap(),
                );
                let scale = p.psi.abs().max(p.omega.abs()).max(p.u[0].abs()).max(1e-300);
                parity = parity
                    .max((p.psi + m.psi).abs() / scale)
                    .max((p.omega + m.omega).abs() / scale)
                    .max((p.u[0] - m.u[0]).abs() / scale)
                    .max((p.u[1] + m.u[1]).abs() / scale);
                let (fp, _) = force_sum(traj, n_layers, t, [c + dx, y]).unwrap();
                let (fm, _) = force_sum(traj, n_layers, t, [c + dx, -y]).unwrap();
                f_odd = f_odd.max((fp + fm).abs() / fp.abs().max(fm.abs()).max(1e-300));
                for n in 1..=n_layers {
                    o_rho = o_rho.max(
                        density_force(traj, n, t, [c + dx, y])
                            .unwrap()
                            .old_transport
                            .abs(),
                    );
                }
            }
        }
    }
    rep.push(CheckResult::bounded(
        "x2 parity of psi, omega, u",
        parity,
        1e-13,
    ));
    rep.push(CheckResult::bounded(
        "density old-transport term identically zero",
        o_rho,
        0.0,
    ));
    rep.push(CheckResult::bounded(
        "vorticity force odd in x2",
        f_odd,
        1e-12,
    ));

    // Zero mean of f_omega over the support box: a symmetric midpoint grid.
    let mean = |cells: usize| -> f64 {
        let (hx, hy) = (
            (bx[1] - bx[0]) / cells as f64,
            (by[1] - by[0]) / cells as f64,
        );
        let mut acc = 0.0;
        for i in 0..cells {
            for j in 0..cells {
                let x = [bx[0] + (i as f64 + 0.5) * hx, by[0] + (j as f64 + 0.5) * hy];
                acc += force_sum(traj, n_layers, 0.45, x).unwrap().0;
            }
        }
        acc * hx * hy
    };
    let (coarse, fine) = (mean(24), mean(48));
    let quad_err = (fine - coarse).abs().max(1e-10);
    rep.push(
        CheckResult::bounded("vorticity force has zero mean", fine.abs(), quad_err)
            .with_detail(format!("refinement difference {:.3e}", fine - coarse)),
    );

    // PDE residual oracle at fixed interior probe points.
    let oracle_tol = if n_layers <= 1 { 1e-4 } else { 1e-3 };
    let mut mismatch = 0.0f64;
    for &t in &[0.2, 0.55, 0.9] {
        let active = (1..=n_layers).filter(|&n| s.t_n(n) < t).max().unwrap_or(1);
        let h_t = 1e-6 * (1.0 - s.t_n(active));
        let c = traj.center1(1, t).unwrap();
        for &(dx, y) in &[(0.7, 0.5), (-1.6, 1.8), (2.4, -0.9)] {
            let x = [c + dx, y];
            let r = residual_oracle(traj, n_layers, t, x, h_t).unwrap();
            let (fo, fr) = force_sum(traj, n_layers, t, x).unwrap();
            mismatch = mismatch
                .max((r.res_omega - fo).abs() / (r.res_omega.abs() + fo.abs() + 1e-300))
                .max((r.res_rho - fr).abs() / (r.res_rho.abs() + fr.abs() + 1e-300));
        }
    }
    rep.push(CheckResult::bounded(
        "assembled forces match the PDE residual",
        mismatch,
        oracle_tol,
    ));

    // Density vanishes identically at the switch times t_{n+1}.
    let mut at_switch = 0.0f64;
    for n in 1..=n_layers {
        let t_sw = s.t_n(n + 1);
        let c = traj.center1(n, t_sw).unwrap();
        for &dx in &[0.0, 0.8, -1.2] {
            for &y in &[0.0, 0.6] {
                let smp = layer_fields(traj, n, t_sw, [c + dx, y]).unwrap();
                at_switch = at_switch.max(smp.rho.abs());
            }
        }
    }
    rep.push(CheckResult::bounded(
        "density is zero at every switch time",
        at_switch,
        0.0,
    ));

    // Vacuous past-layer checks for N = 1 are covered by construction; note
    // the layer count for the record.
    rep.push(CheckResult::informational(
        "layers verified",
        n_layers as f64,
        String::new(),
    ));

    rep
}
