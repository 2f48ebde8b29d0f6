use serde::{Deserialize, Serialize};

use crate::bellman::{BellmanFunction, ConjugatePair};
use crate::engine::{transform_top, StepFunction};
use crate::error::{invalid, Result};
use crate::norms::power_sum_root;

use super::{derived_cap, SCHEMA_VERSION};

/// `‖(ln|a|)^(1/2)‖_(L^q) / ‖f‖_(L^p)` across a p-grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub schema_version: u32,
    pub d: u32,
    pub freq_exponent: u32,
    pub p_grid: Vec<f64>,
    pub ratios: Vec<f64>,
    pub sup_ratio: f64,
    pub theoretical_cap: f64,
    pub within_cap: bool,
}

impl RatioReport {
    pub fn ratio_at(&self, p: f64) -> Option<f64> {
        self.p_grid.iter().position(|&x| x == p).map(|i| self.ratios[i])
    }
}

/// The `L^q` norm is taken over the frequency window `[0, d^N_ξ)` with grid
/// spacing `d^(-N_x)`; `q = ∞` is the grid maximum.
pub fn hy_ratio_scan(
    f: &StepFunction,
    freq_exponent: u32,
    bf: &BellmanFunction,
    p_grid: &[f64],
) -> Result<RatioReport> {
    if f.is_zero() {
        return Err(invalid("the ratio scan needs a nonzero function"));
    }
    if f.radix() != bf.radix() {
        return Err(invalid(format!(
            "function has d = {} but the Bellman function has d = {}",
            f.radix(),
            bf.radix()
        )));
    }
    if p_grid.is_empty() {
        return Err(invalid("the p-grid is empty"));
    }
    let pairs = p_grid
        .iter()
        .map(|&p| ConjugatePair::new(p))
        .collect::<Result<Vec<_>>>()?;
    let top = transform_top(f, freq_exponent)?;
    let sizes: Vec<f64> = top.matrices().iter().map(|g| g.size()).collect();
    let spacing = (f.radix() as f64).powi(-(f.support_exponent() as i32));
    let ratios: Vec<f64> = pairs
        .iter()
        .map(|pair| power_sum_root(&sizes, pair.q(), spacing) / f.lp_norm(pair.p()))
        .collect();
    let sup_ratio = ratios.iter().copied().fold(0.0, f64::max);
    let theoretical_cap = derived_cap(f.radix());
    Ok(RatioReport {
        schema_version: SCHEMA_VERSION,
        d: f.radix(),
        freq_exponent,
        p_grid: p_grid.to_vec(),
        ratios,
        sup_ratio,
        theoretical_cap,
        within_cap: sup_ratio <= theoretical_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellman::solve_threshold;
    use num_complex::Complex64;

    #[test]
    fn unit_box_at_p_two() {
        let f = StepFunction::new(2, 0, 0, vec![Complex64::new(1.0, 0.0)]).unwrap();
        let bf = solve_threshold(2).unwrap();
        let r = hy_ratio_scan(&f, 0, &bf, &[1.0, 2.0]).unwrap();
        let expect = 1f64.cosh().ln().sqrt();
        assert!((r.ratio_at(2.0).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.6586).abs() < 1e-4);
        assert!(r.ratio_at(1.0).unwrap() <= 1.0);
        assert!(r.within_cap);
    }

    #[test]
    fn zero_input_is_rejected() {
        let f = StepFunction::zero(2, 0, 1).unwrap();
        let bf = solve_threshold(2).unwrap();
        assert!(hy_ratio_scan(&f, 1, &bf, &[2.0]).is_err());
    }
}
