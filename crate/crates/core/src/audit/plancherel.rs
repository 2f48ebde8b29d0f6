use serde::{Deserialize, Serialize};

use crate::engine::{transform_top_window, StepFunction};
use crate::error::Result;

use super::SCHEMA_VERSION;

/// `‖f‖₂² - Σ_grid 2·size(G(ξ))²·d^(-N_x)`. The moduli are constant on each
/// grid cell, so the sum is the exact integral over `[0, d^N_ξ)`. Windows
/// narrower than the resolution of `f` are allowed.
pub fn plancherel_defect(f: &StepFunction, freq_exponent: u32) -> Result<f64> {
    let top = transform_top_window(f, freq_exponent)?;
    let spacing = (f.radix() as f64).powi(-(f.support_exponent() as i32));
    let captured: f64 = top.matrices().iter().map(|g| 2.0 * g.ln_abs_a()).sum::<f64>() * spacing;
    Ok(f.l2_norm().powi(2) - captured)
}

/// The defect over a range of frequency windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlancherelReport {
    pub schema_version: u32,
    pub d: u32,
    pub energy: f64,
    pub freq_exponents: Vec<u32>,
    pub defects: Vec<f64>,
    pub nonnegative: bool,
    pub nonincreasing: bool,
    /// Last defect strictly below the first.
    pub strict: bool,
}

/// Tolerance on nonnegativity, relative to `‖f‖₂²`.
const DEFECT_TOL: f64 = 1e-10;

pub fn plancherel_table(f: &StepFunction, freq_exponents: &[u32]) -> Result<PlancherelReport> {
    let energy = f.l2_norm().powi(2);
    let defects = freq_exponents
        .iter()
        .map(|&n| plancherel_defect(f, n))
        .collect::<Result<Vec<f64>>>()?;
    let tol = DEFECT_TOL * energy.max(1.0);
    let nonnegative = defects.iter().all(|&x| x >= -tol);
    let nonincreasing = defects.windows(2).all(|w| w[1] <= w[0] + tol);
    let strict = match (defects.first(), defects.last()) {
        (Some(a), Some(b)) => defects.len() > 1 && b < a,
        _ => false,
    };
    Ok(PlancherelReport {
        schema_version: SCHEMA_VERSION,
        d: f.radix(),
        energy,
        freq_exponents: freq_exponents.to_vec(),
        defects,
        nonnegative,
        nonincreasing,
        strict,
    })
}
