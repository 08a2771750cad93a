//! The twelve layer-norm feasibility inequalities.
//!
//! Each force term's Hölder norm scales like C^{LHS·Eₙ} across layers; the
//! family stays summable exactly when every applicable LHS (including its
//! explicit margin in μ, δ, ζ, 1−γ) is negative. The slack reported here is
//! −LHS, so positive slack means the inequality is satisfied.

use crate::ParamSchedule;

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityItem {
    pub name: &'static str,
    /// Margin-free part of the left-hand side.
    pub lhs: f64,
    /// Explicit margin in μ, δ, ζ and 1−γ.
    pub margin: f64,
    /// Whether the inequality applies at this (α, k_max, Λ).
    pub applicable: bool,
    /// −(lhs + margin); the inequality holds when this is positive.
    pub slack: f64,
}

impl FeasibilityItem {
    pub fn pass(&self) -> bool {
        !self.applicable || self.slack > 0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub alpha: f64,
    pub items: Vec<FeasibilityItem>,
}

impl FeasibilityReport {
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(FeasibilityItem::pass)
    }
}

/// Sign probe for the vorticity-transport constant −1 + 2Λ + 3k_max; the
/// construction needs it negative at the critical exponents.
pub fn transport_sign_check(k_max: f64, lambda: f64) -> f64 {
    -1.0 + 2.0 * lambda + 3.0 * k_max
}

/// Evaluate all twelve inequalities for Hölder exponent `alpha` under the
/// schedule's (k_max, Λ, μ, δ, ζ, γ).
pub fn feasibility_margins(sched: &ParamSchedule, alpha: f64) -> FeasibilityReport {
    let a = alpha;
    let k = sched.k_max;
    let l = sched.lambda_exp;
    let mu = sched.mu;
    let d = sched.delta;
    let z = sched.zeta;
    let og = 1.0 - sched.gamma;

    // Inequalities 6 and 12 only bind in the regime where the gradient of the
    // past-layer velocity is dominated by its stretched component.
    let conditional = a * (1.0 - k) - l > 0.0;

    let items = vec![
        item(
            "density time derivative",
            a - k,
            4.0 * z + 7.0 * mu + 3.0 * d,
            true,
        ),
        item(
            "density pure quadratic",
            a - (k.min((1.0 - a) * k + a * l)).min(l - a * k),
            3.0 * d + 3.0 * mu,
            true,
        ),
        item(
            "density transport (Hölder floor)",
            -(1.0 - a) * (1.0 - k),
            6.0 * mu + 3.0 * d + 3.0 * og,
            true,
        ),
        item(
            "density transport (support scale)",
            -(1.0 - k - l),
            6.0 * mu + 3.0 * d + 3.0 * og,
            true,
        ),
        item(
            "density transport (leading)",
            a * (1.0 + k) + 2.0 * l + 3.0 * k - 1.0,
            6.0 * mu + 3.0 * d + 3.0 * og,
            true,
        ),
        item(
            "density transport (stretched gradient)",
            a * (1.0 - k) + l + 3.0 * k - 1.0,
            6.0 * mu + 3.0 * d + 3.0 * og,
            conditional,
        ),
        item(
            "vorticity time factor",
            a * (1.0 + k) - l,
            3.0 * mu + 2.0 * d,
            true,
        ),
        item(
            "vorticity pure quadratic",
            a * (1.0 + k) - l,
            2.0 * d + 5.0 * mu,
            true,
        ),
        item(
            "vorticity new transport of old",
            -(1.0 - a),
            4.0 * mu + 2.0 * og + 2.0 * d,
            true,
        ),
        item(
            "vorticity transport (leading)",
            a * (1.0 + k) - 1.0 + 2.0 * l + 3.0 * k,
            4.0 * mu + 2.0 * d + 2.0 * og,
            true,
        ),
        item(
            "vorticity transport (alpha-free)",
            -1.0 + 2.0 * l + 3.0 * k,
            4.0 * mu + 2.0 * d + 2.0 * og,
            true,
        ),
        item(
            "vorticity transport (stretched gradient)",
            a * (1.0 - k) - 1.0 + l + 3.0 * k,
            4.0 * mu + 2.0 * d + 2.0 * og,
            conditional,
        ),
    ];

    FeasibilityReport { alpha, items }
}

fn item(name: &'static str, lhs: f64, margin: f64, applicable: bool) -> FeasibilityItem {
    FeasibilityItem {
        name,
        lhs,
        margin,
        applicable,
        slack: -(lhs + margin),
    }
}
