//! Per-layer charts: the affine map between physical coordinates and the
//! layer's stretched tilde coordinates.

use dynamics::{DynamicsError, LayerChainTrajectory};

/// Chart of layer n at time t. Forward map sends tilde to physical:
/// x = center + (x̃₁/a, x̃₂/b); the layer center sits on the x₁ axis.
#[derive(Debug, Clone, Copy)]
pub struct Chart {
    pub n: usize,
    pub t: f64,
    pub center1: f64,
    pub a: f64,
    pub b: f64,
}

impl Chart {
    pub fn from_trajectory(
        traj: &LayerChainTrajectory,
        n: usize,
        t: f64,
    ) -> Result<Chart, DynamicsError> {
        Ok(Chart {
            n,
            t,
            center1: traj.center1(n, t)?,
            a: traj.a(n, t)?,
            b: traj.b(n, t)?,
        })
    }

    pub fn forward(&self, tilde: [f64; 2]) -> [f64; 2] {
        [self.center1 + tilde[0] / self.a, tilde[1] / self.b]
    }

    pub fn inverse(&self, x: [f64; 2]) -> [f64; 2] {
        [self.a * (x[0] - self.center1), self.b * x[1]]
    }

    /// Jacobian of the inverse map: diag(a, b).
    pub fn jacobian_inverse(&self) -> [f64; 2] {
        [self.a, self.b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_the_identity() {
        let ch = Chart {
            n: 1,
            t: 0.5,
            center1: 0.37,
            a: 100.0,
            b: 1e4,
        };
        for &tilde in &[[0.0, 0.0], [3.1, -7.7], [-20.0, 20.0]] {
            let back = ch.inverse(ch.forward(tilde));
            assert!((back[0] - tilde[0]).abs() < 1e-12 * tilde[0].abs().max(1.0));
            assert!((back[1] - tilde[1]).abs() < 1e-12 * tilde[1].abs().max(1.0));
        }
    }

    #[test]
    fn origin_maps_to_the_center() {
        let ch = Chart {
            n: 2,
            t: 0.9,
            center1: 1.25,
            a: 7.0,
            b: 9.0,
        };
        assert_eq!(ch.forward([0.0, 0.0]), [1.25, 0.0]);
        assert_eq!(ch.inverse([1.25, 0.0]), [0.0, 0.0]);
    }
}
