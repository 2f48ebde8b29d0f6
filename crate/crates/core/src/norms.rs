//! Scaled power sums. Exponents up to ~1000 occur for `p` near 1, so every
//! sum factors out the largest entry before raising to a power.

/// `(Σ x_i^p)^(1/p)` for nonnegative `x_i`; `p = ∞` gives the maximum.
pub fn lp_norm(values: &[f64], p: f64) -> f64 {
    power_sum_root(values, p, 1.0)
}

/// Normalized `(1/n · Σ x_i^q)^(1/q)`; `q = ∞` gives the maximum.
pub fn mean_norm(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    power_sum_root(values, q, 1.0 / values.len() as f64)
}

/// `(weight · Σ x_i^p)^(1/p)`.
pub fn power_sum_root(values: &[f64], p: f64, weight: f64) -> f64 {
    let max = values.iter().copied().fold(0.0, f64::max);
    if p.is_infinite() || max == 0.0 {
        return max;
    }
    let sum: f64 = values.iter().map(|&x| (x / max).powf(p)).sum();
    max * (weight * sum).powf(1.0 / p)
}
