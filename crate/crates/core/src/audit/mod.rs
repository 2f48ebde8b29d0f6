//! Theorem-level experiments on top of the engine and the Bellman function.

mod fuzz;
mod plancherel;
mod ratio;
pub mod sampling;
mod scale;

pub use fuzz::{
    evaluate_case, fuzz_case_lemmas, fuzz_discrete_hausdorff_young, fuzz_swap_inequality,
    CaseLemmaReport, DiscreteHyReport, InequalityStats, SwapFuzzReport, Witness,
};
pub use plancherel::{plancherel_defect, plancherel_table, PlancherelReport};
pub use ratio::{hy_ratio_scan, RatioReport};
pub use sampling::{Regime, CHUNK};
pub use scale::{endpoint_bounds, scale_functional, EndpointBounds, ScaleReport};

/// Version stamped on every JSON report and CSV header.
pub const SCHEMA_VERSION: u32 = 1;

/// Multiplicative slack on proven non-strict inequalities.
pub const SLACK: f64 = 1e-10;

/// A comparison counts only when both sides exceed this.
pub const SUBNORMAL_GUARD: f64 = 1e-300;

/// `2^6·d^5`, the per-side constant of the β sandwich.
pub fn theorem_constant(d: u32) -> f64 {
    64.0 * (d as f64).powi(5)
}

/// `2^12·d^10`, the square of [`theorem_constant`].
pub fn derived_cap(d: u32) -> f64 {
    theorem_constant(d).powi(2)
}
