//! Explicit solution fields: stream function, velocity, vorticity and
//! density of each layer, their superposition, and the background-velocity
//! data needed for force assembly.
//!
//! Every layer is a separable product in its own stretched chart:
//! ψ̃ = Bₙ·S(x̃₁)S(x̃₂) with S(y) = φ(λₙy)·sin y, where φ is a fixed smooth
//! cutoff that is 1 on [−8π,8π] and 0 outside [−16π,16π]. All spatial
//! derivatives are analytic (third-order jets through the cutoff); finite
//! differences are used only by test oracles.

mod chart;
mod cutoff;
mod jet;
mod past;
mod sample;

pub use chart::Chart;
pub use cutoff::{cutoff_eval, cutoff_jet, wave_s, wave_t, PLATEAU, SUPPORT};
pub use jet::{transition_jet, Jet3};
pub use past::{velocity_of_past_layers, vorticity_gradient_of_past_layers, PastLayerVelocity};
pub use sample::{layer_fields, support_box, total_fields, FieldSample};
