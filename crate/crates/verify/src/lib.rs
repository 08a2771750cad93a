//! Verification suite: invariant checks, ideal-model convergence probes,
//! regularity-trend sweeps and the blow-up tracker.

mod blowup;
mod bounds;
mod probe;
mod report;
mod suite;
mod sweep;

pub use blowup::{blowup_tracker, BlowupLayer, BlowupReport};
pub use bounds::{ln_envelope_ratio, term_exponents, EnvelopeConfig, TermExponents};
pub use probe::{convergence_probe, ConvergenceProbe, ProbeConfig, ProbeError};
pub use report::{CheckResult, InvariantReport};
pub use suite::{run_invariant_suite, SuiteConfig};
pub use sweep::{regularity_sweep, SweepError, SweepRow, SweepTable};
