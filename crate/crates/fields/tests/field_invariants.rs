//! Finite-difference and symmetry oracles for the field evaluators at the
//! standard desk configuration.

use dynamics::{integrate_chain, LayerChainTrajectory};
use fields::{layer_fields, support_box, total_fields, velocity_of_past_layers, Chart};
use odeint::central_diff_richardson;
use schedule::{plan, PlanConfig};

fn desk() -> LayerChainTrajectory {
    let sched = plan(&PlanConfig::desk(2)).unwrap();
    integrate_chain(&sched, 2, 1e-11).unwrap()
}

fn sample_points(traj: &LayerChainTrajectory, t: f64) -> Vec<[f64; 2]> {
    // Points spread over layer 1's plateau region around the common center.
    let c1 = traj.center1(1, t).unwrap();
    let mut pts = Vec::new();
    for &dx in &[0.3, 1.1, 2.9, -1.7] {
        for &y in &[0.4, -1.3, 2.2] {
            pts.push([c1 + dx, y]);
        }
    }
    pts
}

#[test]
fn velocity_is_the_perp_gradient_of_psi() {
    let traj = desk();
    let t = 0.9;
    let b_big = traj.b(2, t).unwrap();
    let h0 = 1e-3 / b_big;
    for x in sample_points(&traj, t) {
        let s = total_fields(&traj, 2, t, x).unwrap();
        let (dpsi_dx2, _) = central_diff_richardson(
            |y| total_fields(&traj, 2, t, [x[0], y]).unwrap().psi,
            x[1],
            h0,
            3,
        );
        let (dpsi_dx1, _) = central_diff_richardson(
            |y| total_fields(&traj, 2, t, [y, x[1]]).unwrap().psi,
            x[0],
            h0,
            3,
        );
        let scale = s.u[0].abs().max(s.u[1].abs()).max(1e-300);
        assert!(
            (s.u[0] - dpsi_dx2).abs() / scale < 1e-6,
            "u1 vs d2 psi at {x:?}"
        );
        assert!(
            (s.u[1] + dpsi_dx1).abs() / scale < 1e-6,
            "u2 vs -d1 psi at {x:?}"
        );
    }
}

#[test]
fn vorticity_is_minus_laplacian_of_psi() {
    // Checked per layer: each layer's psi lives on its own scale, and the
    // total is their sum. A stencil on the superposition would drown layer
    // 2's psi (~1e-8) in layer 1's (~1e-2) at double precision.
    let traj = desk();
    let t = 0.9;
    for n in 1..=2 {
        let h = 2e-4 / traj.b(n, t).unwrap();
        for x in sample_points(&traj, t) {
            let s = layer_fields(&traj, n, t, x).unwrap();
            let p = |dx: f64, dy: f64| {
                layer_fields(&traj, n, t, [x[0] + dx, x[1] + dy])
                    .unwrap()
                    .psi
            };
            let lap =
                (p(h, 0.0) + p(-h, 0.0) + p(0.0, h) + p(0.0, -h) - 4.0 * p(0.0, 0.0)) / (h * h);
            let scale = s.omega.abs().max(1e-300);
            assert!(
                (s.omega + lap).abs() / scale < 1e-6,
                "omega vs -lap psi at n={n}, {x:?}: {} vs {}",
                s.omega,
                -lap
            );
        }
    }
}

#[test]
fn velocity_is_divergence_free() {
    let traj = desk();
    let t = 0.9;
    let b_big = traj.b(2, t).unwrap();
    let h0 = 1e-3 / b_big;
    for x in sample_points(&traj, t) {
        let (du1, _) = central_diff_richardson(
            |y| total_fields(&traj, 2, t, [y, x[1]]).unwrap().u[0],
            x[0],
            h0,
            3,
        );
        let (du2, _) = central_diff_richardson(
            |y| total_fields(&traj, 2, t, [x[0], y]).unwrap().u[1],
            x[1],
            h0,
            3,
        );
        let scale = du1.abs().max(du2.abs()).max(1e-300);
        assert!(
            (du1 + du2).abs() / scale < 1e-6,
            "div u = {} at {x:?} (scale {scale})",
            du1 + du2
        );
    }
}

#[test]
fn fields_vanish_on_an_exterior_ring() {
    let traj = desk();
    let (bx, by) = support_box(&traj).unwrap();
    for i in 0..20 {
        let t = 0.02 + 0.96 * i as f64 / 19.0;
        for k in 0..12 {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / 12.0;
            let x = [
                0.5 * (bx[0] + bx[1]) + 0.55 * (bx[1] - bx[0]) * ang.cos() * 1.02,
                0.55 * (by[1] - by[0]) * ang.sin() * 1.02,
            ];
            // keep only genuinely exterior points of the ellipse
            if x[0] > bx[0] && x[0] < bx[1] && x[1] > by[0] && x[1] < by[1] {
                continue;
            }
            let s = total_fields(&traj, 2, t, x).unwrap();
            assert_eq!(s.psi, 0.0);
            assert_eq!(s.u, [0.0, 0.0]);
            assert_eq!(s.omega, 0.0);
            assert_eq!(s.rho, 0.0);
        }
    }
}

#[test]
fn fields_have_the_stated_x2_parity() {
    let traj = desk();
    for &t in &[0.05, 0.2, 0.9] {
        for x in sample_points(&traj, t) {
            let s = total_fields(&traj, 2, t, x).unwrap();
            let m = total_fields(&traj, 2, t, [x[0], -x[1]]).unwrap();
            assert_eq!(s.psi, -m.psi, "psi odd in x2");
            assert_eq!(s.omega, -m.omega, "omega odd in x2");
            assert_eq!(s.u[0], m.u[0], "u1 even in x2");
            assert_eq!(s.u[1], -m.u[1], "u2 odd in x2");
            assert_eq!(s.rho, m.rho, "rho even in x2");
        }
    }
}

#[test]
fn at_most_one_density_layer_is_active() {
    let traj = desk();
    for i in 0..40 {
        let t = 0.01 + 0.98 * i as f64 / 39.0;
        let mut active = 0;
        for n in 1..=2 {
            let c = traj.center1(1, 0.0).unwrap();
            let s = layer_fields(&traj, n, t, [c + 0.4, 0.1]).unwrap();
            let amp = traj.schedule().z_n(n) * traj.ramp(n).h(t);
            if s.rho != 0.0 || amp != 0.0 {
                active += 1;
            }
        }
        assert!(active <= 1, "two density layers alive at t={t}");
    }
}

#[test]
fn density_amplitude_cross_checks_the_dynamics_derivative() {
    // rho's tilde amplitude is -(1/b_n) d/dt[B_n(a_n^2+b_n^2)]; at tilde
    // (pi/2, 0) this is the whole field value.
    let traj = desk();
    for n in 1..=2usize {
        let r = traj.ramp(n);
        let t = 0.5 * (r.plateau_start() + r.plateau_end());
        let chart = Chart::from_trajectory(&traj, n, t).unwrap();
        let x = chart.forward([std::f64::consts::FRAC_PI_2, 0.0]);
        let s = layer_fields(&traj, n, t, x).unwrap();
        let d = traj.amplitude_time_derivatives(n, t).unwrap();
        let want = -d.d_sum / traj.b(n, t).unwrap();
        assert!(
            ((s.rho - want) / want).abs() < 1e-12,
            "rho amplitude at n={n}: {} vs {want}",
            s.rho
        );
    }
}

#[test]
fn inactive_layer_contributes_nothing() {
    let traj = desk();
    let s = traj.schedule();
    let t = 0.5 * s.t_n(2);
    let c = traj.center1(1, t).unwrap();
    let smp = layer_fields(&traj, 2, t, [c + 0.3, 0.2]).unwrap();
    assert_eq!(smp.psi, 0.0);
    assert_eq!(smp.omega, 0.0);
    assert_eq!(smp.rho, 0.0);
}

#[test]
fn background_jacobian_is_traceless_and_diagonal() {
    let traj = desk();
    for &t in &[0.2, 0.6, 0.95] {
        let p = velocity_of_past_layers(&traj, 2, t, [0.7, -0.3]).unwrap();
        assert_eq!(p.j_at_0[0][1], 0.0, "off-diagonal vanishes exactly");
        assert_eq!(p.j_at_0[1][0], 0.0);
        let trace = p.j_at_0[0][0] + p.j_at_0[1][1];
        assert!(
            trace.abs() <= 1e-12 * p.j_at_0[0][0].abs().max(1e-300),
            "trace {trace}"
        );
    }
}

#[test]
fn background_velocity_matches_summed_layer_fields() {
    let traj = desk();
    let t = 0.8;
    let chart = Chart::from_trajectory(&traj, 2, t).unwrap();
    for &tilde in &[[0.0, 0.0], [1.3, -0.8], [-2.0, 2.5]] {
        let p = velocity_of_past_layers(&traj, 2, t, tilde).unwrap();
        let x = chart.forward(tilde);
        let s = layer_fields(&traj, 1, t, x).unwrap();
        for i in 0..2 {
            assert!(
                (p.u[i] - s.u[i]).abs() < 1e-12 * s.u[i].abs().max(1e-300),
                "component {i} at {tilde:?}"
            );
        }
    }
}

#[test]
fn background_second_derivatives_match_finite_differences() {
    let traj = desk();
    let t = 0.8;
    let chart = Chart::from_trajectory(&traj, 2, t).unwrap();
    let (a_n, b_n) = (chart.a, chart.b);
    // The background varies on layer 1's coarse scale, so pick tilde steps
    // that map to O(1e-4) steps in layer 1's chart.
    let h1 = 1e-4 * a_n / traj.a(1, t).unwrap();
    let h2 = 1e-4 * b_n / traj.b(1, t).unwrap();
    for &tilde in &[[0.9, 0.4], [-1.5, 1.1]] {
        let p = velocity_of_past_layers(&traj, 2, t, tilde).unwrap();
        for comp in 0..2 {
            // physical steps map to tilde steps through the layer-n chart
            let u_at = |dt1: f64, dt2: f64| {
                velocity_of_past_layers(&traj, 2, t, [tilde[0] + dt1, tilde[1] + dt2])
                    .unwrap()
                    .u[comp]
            };
            let d11 =
                (u_at(h1, 0.0) - 2.0 * u_at(0.0, 0.0) + u_at(-h1, 0.0)) / (h1 * h1) * a_n * a_n;
            let d22 =
                (u_at(0.0, h2) - 2.0 * u_at(0.0, 0.0) + u_at(0.0, -h2)) / (h2 * h2) * b_n * b_n;
            let d12 = (u_at(h1, h2) - u_at(h1, -h2) - u_at(-h1, h2) + u_at(-h1, -h2))
                / (4.0 * h1 * h2)
                * a_n
                * b_n;
            let scale = p.d2[comp]
                .iter()
                .fold(0.0f64, |m, v| m.max(v.abs()))
                .max(1e-300);
            assert!(
                (p.d2[comp][0] - d11).abs() / scale < 1e-5,
                "d11 comp {comp}"
            );
            assert!(
                (p.d2[comp][1] - d12).abs() / scale < 1e-5,
                "d12 comp {comp}"
            );
            assert!(
                (p.d2[comp][2] - d22).abs() / scale < 1e-5,
                "d22 comp {comp}"
            );
        }
    }
}

#[test]
fn first_layer_has_no_background() {
    let traj = desk();
    let p = velocity_of_past_layers(&traj, 1, 0.5, [1.0, 1.0]).unwrap();
    assert_eq!(p.u, [0.0, 0.0]);
    assert_eq!(p.j_at_0, [[0.0; 2]; 2]);
}
