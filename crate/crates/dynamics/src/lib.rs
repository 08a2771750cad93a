//! Integration of the real coupled layer ODE chain.
//!
//! Layer n lives on [tₙ, 1] and is driven purely by the layers below it:
//!
//! - center: dφ₁⁽ⁿ⁾/dt(t,0) = Σ_{m<n} Bₘbₘ sin(aₘ(φ₁⁽ⁿ⁾ − φ₁⁽ᵐ⁾)), forward
//!   from φ₁⁽ⁿ⁾(tₙ,0) = φ₁⁽ⁿ⁻¹⁾(tₙ,0) + arcsin(C^{−k_max·Eₙ})/a_{n−1}(1),
//! - aspect ratio: d ln bₙ/dt = Σ_{m<n} Bₘaₘbₘ cos(aₘ(φ₁⁽ⁿ⁾ − φ₁⁽ᵐ⁾)),
//!   backward from ln bₙ(1) = Eₙ ln C, with aₙbₙ = C^{2Eₙ} conserved,
//! - amplitude: Bₙ(aₙ²+bₙ²)(t) = zₙ·Hₙ(t)/Hₙ(1) with Hₙ(t) = ∫ h⁽ⁿ⁾bₙ,
//!   where h⁽ⁿ⁾ is the smooth trapezoid ramp supported on [tₙ, t_{n+1}].
//!
//! Each layer is integrated in its own rescaled time ŝ = (t−tₙ)/(1−tₙ) so
//! step sizes stay O(1) while the windows shrink superexponentially. Layer 1
//! has empty sums and stays exactly frozen.

mod chain;
mod ramp;

pub use chain::{
    integrate_chain, AmplitudeDerivatives, DynamicsError, LayerChainTrajectory, TrajectoryRow,
};
pub use ramp::{transition, RampProfile};
