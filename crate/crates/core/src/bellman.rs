//! The Bellman function `β_d` and the swapped products it controls.
//!
//! `β_d(t) = t·e^(-t)` up to the threshold `t_d` and
//! `(2d)^(-5)·sqrt(1 + arsinh t)` above it, where `t_d ∈ [0, 1]` is the
//! point at which the two branches meet. The function is tuned so that the
//! swapping inequality
//!
//! ```text
//! ( 1/d Σ_k β(|B_k|)^q )^(1/q)  ≤  ( Σ_j β(|b_j|)^p )^(1/p)
//! ```
//!
//! holds with constant exactly one for the twiddled products
//! `(A_k, B_k) = Π_j (a_j, b_j·e^(2πijk/d))`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cantor::{check_radix, Twiddles};
use crate::error::{invalid, Result};
use crate::norms::{lp_norm, mean_norm};
use crate::su11::{arsinh, Su11Element};

/// Exponents used by the fuzzers and audits; `p = 1` is excluded because the
/// swapping inequality is only claimed for `1 < p ≤ 2`.
pub const P_GRID: [f64; 10] = [1.001, 1.01, 1.1, 1.25, 1.5, 1.75, 1.9, 1.99, 1.999, 2.0];

/// `(2d)^(-5)`.
pub fn scale_constant(d: u32) -> f64 {
    (2.0 * d as f64).powi(-5)
}

/// `t·e^(-t) - (2d)^(-5)·sqrt(1 + arsinh t)`; negative at 0, positive at 1.
pub fn threshold_equation(d: u32, t: f64) -> f64 {
    t * (-t).exp() - scale_constant(d) * (1.0 + arsinh(t)).sqrt()
}

fn threshold_derivative(d: u32, t: f64) -> f64 {
    let u = 1.0 + arsinh(t);
    (-t).exp() * (1.0 - t) - scale_constant(d) / (2.0 * u.sqrt() * (1.0 + t * t).sqrt())
}

/// A radix together with its solved threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BellmanFunction {
    d: u32,
    threshold: f64,
    scale_constant: f64,
}

impl BellmanFunction {
    pub fn new(d: u32) -> Result<Self> {
        solve_threshold(d)
    }

    pub fn radix(&self) -> u32 {
        self.d
    }

    /// `t_d`.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    /// `(2d)^(-5)`.
    pub fn scale_constant(&self) -> f64 {
        self.scale_constant
    }

    pub fn residual(&self) -> f64 {
        threshold_equation(self.d, self.threshold).abs()
    }

    /// `t·e^(-t)`.
    pub fn lower_branch(&self, t: f64) -> f64 {
        t * (-t).exp()
    }

    /// `(2d)^(-5)·sqrt(1 + arsinh t)`.
    pub fn upper_branch(&self, t: f64) -> f64 {
        self.scale_constant * (1.0 + arsinh(t)).sqrt()
    }

    /// `β_d(t)` for `t ≥ 0`, unchecked.
    #[inline]
    pub fn value(&self, t: f64) -> f64 {
        if t <= self.threshold {
            self.lower_branch(t)
        } else {
            self.upper_branch(t)
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(invalid(format!("β_d is defined on [0, ∞), got {t}")));
        }
        Ok(self.value(t))
    }

    /// Relative jump between the two branches at `t_d`.
    pub fn continuity_gap(&self) -> f64 {
        let lo = self.lower_branch(self.threshold);
        let hi = self.upper_branch(self.threshold);
        (lo - hi).abs() / lo.max(hi)
    }
}

/// Bisection on `[0, 1]`, then damped Newton, then a last look at the
/// neighbouring floats.
pub fn solve_threshold(d: u32) -> Result<BellmanFunction> {
    check_radix(d)?;
    let g = |t: f64| threshold_equation(d, t);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let target = 1e-6 * scale_constant(d);
    for _ in 0..200 {
        if hi - lo <= target {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    let mut t = 0.5 * (lo + hi);
    for _ in 0..8 {
        let gt = g(t);
        if gt == 0.0 {
            break;
        }
        let mut step = gt / threshold_derivative(d, t);
        let mut accepted = false;
        for _ in 0..30 {
            let cand = (t - step).clamp(lo, hi);
            if g(cand).abs() < gt.abs() {
                t = cand;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    let mut best = t;
    for cand in [t.next_down(), t.next_up()] {
        if g(cand).abs() < g(best).abs() {
            best = cand;
        }
    }
    Ok(BellmanFunction {
        d,
        threshold: best,
        scale_constant: scale_constant(d),
    })
}

/// `t_d - (2d)^(-5) - 3/2·(2d)^(-10)`, computed through the offset
/// `s = t_d - (2d)^(-5)` to keep relative accuracy for large `d`.
///
/// The offset solves `s = c·expm1(c + s + ½·log1p(arsinh(c + s)))`, a
/// contraction with rate about `3c/2`.
pub fn threshold_expansion_remainder(d: u32) -> Result<f64> {
    check_radix(d)?;
    let c = scale_constant(d);
    let mut s = 0.0f64;
    for _ in 0..100 {
        let t = c + s;
        let next = c * (t + 0.5 * arsinh(t).ln_1p()).exp_m1();
        if next == s {
            break;
        }
        s = next;
    }
    Ok(s - 1.5 * c * c)
}

pub fn beta(bf: &BellmanFunction, t: f64) -> Result<f64> {
    bf.eval(t)
}

/// The swapped product `(A_k, B_k) = Π_j (a_j, b_j·e^(2πijk/d))` for
/// `k = 0..d`, ascending in `j`.
pub fn twiddled_product(factors: &[Su11Element], k: usize, twiddles: &Twiddles) -> Su11Element {
    factors
        .iter()
        .enumerate()
        .fold(Su11Element::IDENTITY, |acc, (j, g)| {
            acc.compose(&g.rotate_b(twiddles.phase(j, k)))
        })
}

/// `d` factors and their `d` twiddled products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwapInstance {
    pub d: u32,
    pub factors: Vec<Su11Element>,
    pub outputs: Vec<Su11Element>,
}

impl SwapInstance {
    pub fn factor_b_abs(&self) -> Vec<f64> {
        self.factors.iter().map(Su11Element::abs_b).collect()
    }

    pub fn output_b_abs(&self) -> Vec<f64> {
        self.outputs.iter().map(Su11Element::abs_b).collect()
    }

    /// Largest entry error between the stored outputs and a fresh product.
    pub fn product_residual(&self) -> f64 {
        let tw = Twiddles::new(self.d);
        self.outputs
            .iter()
            .enumerate()
            .map(|(k, out)| out.max_entry_error(&twiddled_product(&self.factors, k, &tw)))
            .fold(0.0, f64::max)
    }

    /// Both sides of the swapping inequality at `pair`.
    pub fn swapping_sides(&self, bf: &BellmanFunction, pair: ConjugatePair) -> (f64, f64) {
        let lhs: Vec<f64> = self.outputs.iter().map(|g| bf.value(g.abs_b())).collect();
        let rhs: Vec<f64> = self.factors.iter().map(|g| bf.value(g.abs_b())).collect();
        (mean_norm(&lhs, pair.q()), lp_norm(&rhs, pair.p()))
    }
}

pub fn swap_product(factors: &[Su11Element]) -> Result<SwapInstance> {
    if factors.len() < 2 {
        return Err(invalid("a swap needs at least two factors"));
    }
    let d = u32::try_from(factors.len()).map_err(|_| invalid("too many factors"))?;
    let tw = Twiddles::new(d);
    let outputs = (0..factors.len())
        .map(|k| twiddled_product(factors, k, &tw))
        .collect();
    Ok(SwapInstance {
        d,
        factors: factors.to_vec(),
        outputs,
    })
}

/// `Z_k = Σ_j z_j e^(2πijk/d)`, unnormalized, by direct summation.
pub fn zd_fourier(z: &[Complex64]) -> Vec<Complex64> {
    let d = z.len();
    if d == 0 {
        return Vec::new();
    }
    let tw = Twiddles::new(d as u32);
    (0..d)
        .map(|k| z.iter().enumerate().map(|(j, &zj)| zj * tw.phase(j, k)).sum())
        .collect()
}

/// The linear terms `b'_j = conj(a_0…a_{j-1})·b_j·a_{j+1}…a_{d-1}` and
/// their transform `B'_k = Σ_j b'_j e^(2πijk/d)`; returns `(B', b')`.
pub fn linear_part(factors: &[Su11Element]) -> (Vec<Complex64>, Vec<Complex64>) {
    let d = factors.len();
    let one = Complex64::new(1.0, 0.0);
    let mut prefix = vec![one; d + 1];
    for j in 0..d {
        prefix[j + 1] = prefix[j] * factors[j].a.conj();
    }
    let mut suffix = vec![one; d + 1];
    for j in (0..d).rev() {
        suffix[j] = suffix[j + 1] * factors[j].a;
    }
    let b_lin: Vec<Complex64> = (0..d)
        .map(|j| prefix[j] * factors[j].b * suffix[j + 1])
        .collect();
    (zd_fourier(&b_lin), b_lin)
}

/// The pivot variant `B''_k`: off-pivot `a_j` replaced by their phases
/// `c_j = a_j/|a_j|`, with `a_m` kept at the pivot.
pub fn pivot_variant(factors: &[Su11Element], pivot: usize) -> Result<Vec<Complex64>> {
    let d = factors.len();
    if pivot >= d {
        return Err(invalid(format!("pivot {pivot} out of range for d = {d}")));
    }
    let weight = |j: usize| {
        let a = factors[j].a;
        if j == pivot {
            a
        } else {
            a / a.norm()
        }
    };
    let one = Complex64::new(1.0, 0.0);
    let mut prefix = vec![one; d + 1];
    for j in 0..d {
        prefix[j + 1] = prefix[j] * weight(j).conj();
    }
    let mut suffix = vec![one; d + 1];
    for j in (0..d).rev() {
        suffix[j] = suffix[j + 1] * weight(j);
    }
    let terms: Vec<Complex64> = (0..d)
        .map(|j| prefix[j] * factors[j].b * suffix[j + 1])
        .collect();
    Ok(zd_fourier(&terms))
}

/// Index of the largest `|b_j|` and of the largest among the others; ties go
/// to the smaller index.
pub fn pivots(b_abs: &[f64]) -> (usize, usize) {
    let mut m = 0;
    for (j, &v) in b_abs.iter().enumerate() {
        if v > b_abs[m] {
            m = j;
        }
    }
    let mut second = if m == 0 { 1 } else { 0 };
    for (j, &v) in b_abs.iter().enumerate() {
        if j != m && v > b_abs[second] {
            second = j;
        }
    }
    (m, second)
}

/// A conjugate pair `1/p + 1/q = 1` with `1 ≤ p ≤ 2`; `q = ∞` exactly when
/// `p = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugatePair {
    p: f64,
    q: f64,
}

impl ConjugatePair {
    pub fn new(p: f64) -> Result<Self> {
        if !(1.0..=2.0).contains(&p) {
            return Err(invalid(format!("exponent p must lie in [1, 2], got {p}")));
        }
        let q = if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
        Ok(ConjugatePair { p, q })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_endpoint_one(&self) -> bool {
        self.q.is_infinite()
    }
}

/// Both sides of the discrete Hausdorff-Young inequality
/// `(1/d Σ|Z_k|^q)^(1/q) ≤ (Σ|z_j|^p)^(1/p)`.
pub fn hausdorff_young_sides(z: &[Complex64], pair: ConjugatePair) -> (f64, f64) {
    let big: Vec<f64> = zd_fourier(z).iter().map(|v| v.norm()).collect();
    let small: Vec<f64> = z.iter().map(|v| v.norm()).collect();
    (mean_norm(&big, pair.q()), lp_norm(&small, pair.p()))
}

/// `φ(t) = t·e^(-q·t^(1/q))`.
pub fn phi(q: f64, t: f64) -> f64 {
    t * (-q * t.powf(1.0 / q)).exp()
}

/// `ψ(t) = (1 + arsinh(t^(2/q)))^(q/2)`.
pub fn psi(q: f64, t: f64) -> f64 {
    (1.0 + arsinh(t.powf(2.0 / q))).powf(q / 2.0)
}

/// Largest second difference `f(t-h) - 2f(t) + f(t+h)` over consecutive
/// triples of `grid`, each divided by the largest `|f|` in its triple.
pub fn max_second_difference<F: Fn(f64) -> f64>(f: F, grid: &[f64]) -> f64 {
    grid.windows(3)
        .map(|w| {
            let (x0, x1, x2) = (w[0], w[1], w[2]);
            let (f0, f1, f2) = (f(x0), f(x1), f(x2));
            // divided second difference scaled to the uniform-grid form
            let h0 = x1 - x0;
            let h1 = x2 - x1;
            let second = (f2 - f1) / h1 - (f1 - f0) / h0;
            let scale = f0.abs().max(f1.abs()).max(f2.abs()) / h0.min(h1);
            if scale == 0.0 {
                0.0
            } else {
                second / scale
            }
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Per-property outcome of [`audit_beta`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetaAudit {
    pub d: u32,
    pub threshold: f64,
    pub residual: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub bounds_hold: bool,
    pub continuity_gap: f64,
    pub points: usize,
    /// Largest `2^(-6)d^(-5)·sqrt(ln(1+t²)) / β_d(t)`.
    pub sandwich_lower_ratio: f64,
    /// Largest `β_d(t) / (2·sqrt(ln(1+t²)))`.
    pub sandwich_upper_ratio: f64,
    /// Largest `β_d(t) / (t·e^(-t))` over grid points in `(0, 1]`.
    pub below_lower_branch_ratio: f64,
    /// Largest `β_d(t) / ((2d)^(-5)·sqrt(1 + arsinh t))`.
    pub below_upper_branch_ratio: f64,
    pub passed: bool,
}

/// Log-spaced grid of `n ≥ 2` points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Checks the sandwich and branch bounds of `β_d` on a log grid over
/// `[1e-12, 1e6]` (plus the threshold itself), the threshold bracket, and
/// continuity at `t_d`.
pub fn audit_beta(bf: &BellmanFunction, points: usize, slack: f64) -> BetaAudit {
    let d = bf.radix();
    let df = d as f64;
    let lower_bound = 2f64.powi(-5) * df.powi(-5);
    let upper_bound = 2f64.powi(-4) * df.powi(-5);
    let low_c = 2f64.powi(-6) * df.powi(-5);
    let mut grid = log_grid(1e-12, 1e6, points);
    grid.push(bf.threshold());
    let (mut r1, mut r2, mut r3, mut r4) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &t in &grid {
        let b = bf.value(t);
        let s = (t * t).ln_1p().sqrt();
        r1 = r1.max(low_c * s / b);
        r2 = r2.max(b / (2.0 * s));
        if t <= 1.0 {
            r3 = r3.max(b / bf.lower_branch(t));
        }
        r4 = r4.max(b / bf.upper_branch(t));
    }
    let bounds_hold = lower_bound < bf.threshold() && bf.threshold() < upper_bound;
    let continuity_gap = bf.continuity_gap();
    let residual = bf.residual();
    let limit = 1.0 + slack;
    let passed = bounds_hold
        && residual <= 1e-14
        && continuity_gap <= 1e-15
        && r1 <= limit
        && r2 <= limit
        && r3 <= limit
        && r4 <= limit;
    BetaAudit {
        d,
        threshold: bf.threshold(),
        residual,
        lower_bound,
        upper_bound,
        bounds_hold,
        continuity_gap,
        points: grid.len(),
        sandwich_lower_ratio: r1,
        sandwich_upper_ratio: r2,
        below_lower_branch_ratio: r3,
        below_upper_branch_ratio: r4,
        passed,
    }
}
