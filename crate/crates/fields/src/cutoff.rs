//! The fixed spatial cutoff φ and the cutoff-bearing wave factors
//! S(y) = φ(λy)·sin y and T(y) = φ(λy)·cos y with analytic derivatives.
//!
//! φ(x) = ϑ((16π−|x|)/(8π)): even, identically 1 on [−8π, 8π], identically 0
//! outside [−16π, 16π], smooth in between.

use crate::jet::{transition_jet, Jet3};
use std::f64::consts::PI;

/// Inner plateau radius 8π.
pub const PLATEAU: f64 = 8.0 * PI;
/// Support radius 16π.
pub const SUPPORT: f64 = 16.0 * PI;

/// φ and its first three derivatives at x.
pub fn cutoff_jet(x: f64) -> Jet3 {
    let r = x.abs();
    if r <= PLATEAU {
        Jet3::constant(1.0)
    } else if r >= SUPPORT {
        Jet3::constant(0.0)
    } else {
        let u = (SUPPORT - r) / PLATEAU;
        transition_jet(u).scale_arg(-x.signum() / PLATEAU)
    }
}

/// φ value with first and second derivative.
pub fn cutoff_eval(x: f64) -> (f64, f64, f64) {
    let j = cutoff_jet(x);
    (j.0[0], j.0[1], j.0[2])
}

/// S(y) = φ(λy) sin y and derivatives to order 3.
pub fn wave_s(lambda: f64, y: f64) -> Jet3 {
    let c = cutoff_jet(lambda * y).scale_arg(lambda);
    let s = Jet3([y.sin(), y.cos(), -y.sin(), -y.cos()]);
    c.mul(&s)
}

/// T(y) = φ(λy) cos y and derivatives to order 3.
pub fn wave_t(lambda: f64, y: f64) -> Jet3 {
    let c = cutoff_jet(lambda * y).scale_arg(lambda);
    let t = Jet3([y.cos(), -y.sin(), -y.cos(), y.sin()]);
    c.mul(&t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateau_and_support() {
        assert_eq!(cutoff_eval(0.0), (1.0, 0.0, 0.0));
        assert_eq!(cutoff_eval(PLATEAU), (1.0, 0.0, 0.0));
        assert_eq!(cutoff_eval(17.0 * PI), (0.0, 0.0, 0.0));
        assert_eq!(cutoff_eval(-100.0 * PI), (0.0, 0.0, 0.0));
        let (mid, _, _) = cutoff_eval(12.0 * PI);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn cutoff_is_even() {
        for &x in &[1.0, 9.0 * PI, 11.3 * PI, 15.9 * PI] {
            let a = cutoff_jet(x);
            let b = cutoff_jet(-x);
            assert_eq!(a.0[0], b.0[0]);
            assert_eq!(a.0[1], -b.0[1], "odd first derivative at {x}");
            assert_eq!(a.0[2], b.0[2]);
        }
    }

    #[test]
    fn cutoff_derivatives_match_finite_differences() {
        let h = 1e-4;
        for &x in &[9.5 * PI, 12.0 * PI, 14.7 * PI] {
            let j = cutoff_jet(x);
            let v = |k: i32| cutoff_jet(x + k as f64 * h).0[0];
            let d1 = (v(1) - v(-1)) / (2.0 * h);
            let d2 = (v(1) - 2.0 * v(0) + v(-1)) / (h * h);
            assert!((j.0[1] - d1).abs() < 1e-7, "d1 at {x}");
            assert!((j.0[2] - d2).abs() < 1e-4, "d2 at {x}");
        }
    }

    #[test]
    fn wave_reduces_to_plain_trig_on_the_plateau() {
        // lambda small enough that lambda*y stays on the plateau
        let (lambda, y) = (0.01, 2.2);
        let s = wave_s(lambda, y);
        assert_eq!(s.0, [y.sin(), y.cos(), -y.sin(), -y.cos()]);
        let t = wave_t(lambda, y);
        assert_eq!(t.0, [y.cos(), -y.sin(), -y.cos(), y.sin()]);
    }

    #[test]
    fn wave_derivatives_match_finite_differences_through_the_shoulder() {
        let lambda = 1.0;
        let h = 1e-4;
        for &y in &[9.0 * PI + 0.4, 13.0 * PI + 0.1] {
            let j = wave_s(lambda, y);
            let v = |k: i32| wave_s(lambda, y + k as f64 * h).0[0];
            let d1 = (v(1) - v(-1)) / (2.0 * h);
            let d2 = (v(1) - 2.0 * v(0) + v(-1)) / (h * h);
            let d3 = (wave_s(lambda, y + 2.0 * h).0[0] - 2.0 * v(1) + 2.0 * v(-1)
                - wave_s(lambda, y - 2.0 * h).0[0])
                / (2.0 * h * h * h);
            assert!((j.0[1] - d1).abs() < 1e-6, "S' at {y}");
            assert!((j.0[2] - d2).abs() < 1e-4, "S'' at {y}");
            assert!((j.0[3] - d3).abs() < 1e-2, "S''' at {y}");
        }
    }
}
