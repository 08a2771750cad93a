//! Parameter planning for the layered blow-up construction.
//!
//! Everything downstream (ODE chain, fields, forces, verification) runs off a
//! single deterministic `ParamSchedule` computed here from a small user
//! configuration:
//!
//! - the critical exponent triple (α*, Λ*, k_max*) solving the reduced
//!   regularity system α = k_max = Λ/(1+k_max) = (1−2Λ−3k_max)/(1+k_max),
//! - per-layer scale exponents Eₙ = (1/(1−γ))ⁿ, cutoff scales λₙ = C^{−ΛEₙ},
//!   pendulum amplitudes Mₙ, density weights zₙ = 2Mₙ and switch times tₙ,
//! - the twelve feasibility inequalities that decide which Hölder exponents α
//!   the force family can sustain.
//!
//! Magnitudes of the form C^{x·Eₙ} are carried as natural logs alongside
//! linear values; the linear value is materialized only when the log fits a
//! double (|ln| < 700). Validation rejects any plan whose downstream linear
//! quantities would overflow.

mod feasibility;
mod plan;

pub use feasibility::{
    feasibility_margins, transport_sign_check, FeasibilityItem, FeasibilityReport,
};
pub use plan::{arccosh_exp, materialize, plan, Exponent, ParamSchedule, PlanConfig, PlanError};

/// The exponent triple at which all three reduced regularity equations hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalExponents {
    pub alpha_star: f64,
    pub lambda_star: f64,
    pub k_max_star: f64,
}

/// Unique positive solution of α² + 2α − 1/3 = 0 together with the induced
/// Λ* = α*(1+α*) and k_max* = α*.
pub fn optimal_exponents() -> CriticalExponents {
    let alpha_star = (4.0f64 / 3.0).sqrt() - 1.0;
    CriticalExponents {
        alpha_star,
        lambda_star: alpha_star * (1.0 + alpha_star),
        k_max_star: alpha_star,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_solve_the_quadratic() {
        let e = optimal_exponents();
        let a = e.alpha_star;
        assert!((a * a + 2.0 * a - 1.0 / 3.0).abs() < 1e-15);
        assert!((a - 0.1547005383792515).abs() < 1e-12);
    }

    #[test]
    fn exponents_satisfy_all_three_reduced_equations() {
        let e = optimal_exponents();
        let (a, l, k) = (e.alpha_star, e.lambda_star, e.k_max_star);
        assert!((a - k).abs() < 1e-12, "alpha = k_max");
        assert!(
            (a - (1.0 - 2.0 * l - 3.0 * k) / (1.0 + k)).abs() < 1e-12,
            "alpha = (1-2L-3k)/(1+k)"
        );
        assert!((a - l / (1.0 + k)).abs() < 1e-12, "alpha = L/(1+k)");
    }

    #[test]
    fn support_exponent_is_two_thirds() {
        let e = optimal_exponents();
        let v = 1.0 - e.k_max_star - e.lambda_star;
        assert!((v - 2.0 / 3.0).abs() < 1e-14, "1 - k* - L* = 2/3, got {v}");
    }
}
