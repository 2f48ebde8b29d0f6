use serde::{Deserialize, Serialize};

use crate::bellman::{BellmanFunction, ConjugatePair};
use crate::engine::{StepFunction, TileLayer, TilePyramid};
use crate::error::{invalid, Result};
use crate::norms::{lp_norm, mean_norm};

use super::{theorem_constant, SLACK};

/// `B_n` at every scale of one pyramid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaleReport {
    pub p: f64,
    pub scales: Vec<i32>,
    pub values: Vec<f64>,
    pub monotone: bool,
    /// Largest relative increase `B_(n+1)/B_n - 1`, or 0.
    pub max_violation: f64,
}

fn layer_value(layer: &TileLayer, bf: &BellmanFunction, pair: ConjugatePair) -> f64 {
    let columns: Vec<f64> = (0..layer.columns())
        .map(|c| {
            let betas: Vec<f64> = layer.column(c).iter().map(|g| bf.value(g.abs_b())).collect();
            mean_norm(&betas, pair.q())
        })
        .collect();
    lp_norm(&columns, pair.p())
}

/// `B_n = (Σ_columns (rows⁻¹ Σ_rows β_d(|b|)^q)^(p/q))^(1/p)` per layer.
pub fn scale_functional(
    pyramid: &TilePyramid,
    bf: &BellmanFunction,
    pair: ConjugatePair,
) -> Result<ScaleReport> {
    if pyramid.radix() != bf.radix() {
        return Err(invalid(format!(
            "pyramid has d = {} but the Bellman function has d = {}",
            pyramid.radix(),
            bf.radix()
        )));
    }
    let scales: Vec<i32> = pyramid.layers().iter().map(TileLayer::scale).collect();
    let values: Vec<f64> = pyramid
        .layers()
        .iter()
        .map(|l| layer_value(l, bf, pair))
        .collect();
    let mut max_violation = 0.0f64;
    let mut monotone = true;
    for w in values.windows(2) {
        if w[1] > w[0] * (1.0 + SLACK) {
            monotone = false;
        }
        if w[1] > w[0] {
            let rel = if w[0] > 0.0 { w[1] / w[0] - 1.0 } else { f64::INFINITY };
            max_violation = max_violation.max(rel);
        }
    }
    Ok(ScaleReport { p: pair.p(), scales, values, monotone, max_violation })
}

/// The two ends of the monotonicity chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndpointBounds {
    pub constant: f64,
    /// `B` at the base layer.
    pub base: f64,
    /// `C_d·‖f‖_p`.
    pub base_cap: f64,
    /// Normalized `ℓ^q` mean of `(ln|a|)^(1/2)` over the top layer.
    pub top: f64,
    /// `C_d·B` at the top layer.
    pub top_cap: f64,
    pub holds: bool,
}

/// `B_base ≤ C_d‖f‖_p` and `mean_q((ln|a|)^(1/2)) ≤ C_d·B_top`.
pub fn endpoint_bounds(
    f: &StepFunction,
    pyramid: &TilePyramid,
    bf: &BellmanFunction,
    pair: ConjugatePair,
) -> Result<EndpointBounds> {
    let report = scale_functional(pyramid, bf, pair)?;
    let constant = theorem_constant(bf.radix());
    let base = report.values[0];
    let base_cap = constant * f.lp_norm(pair.p());
    let sizes: Vec<f64> = pyramid.top().matrices().iter().map(|g| g.size()).collect();
    let top = mean_norm(&sizes, pair.q());
    let top_cap = constant * report.values[report.values.len() - 1];
    let holds = base <= base_cap * (1.0 + SLACK) && top <= top_cap * (1.0 + SLACK);
    Ok(EndpointBounds { constant, base, base_cap, top, top_cap, holds })
}
