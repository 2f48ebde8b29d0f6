//! Seeded fuzzers for the swapping inequality, the per-case lemmas behind it,
//! and the Hausdorff-Young inequality on `Z_d`.
//!
//! Trials are split into chunks of [`CHUNK`]; each chunk draws from its own
//! generator derived from `(seed, d, regime, chunk)` and chunk results are
//! merged in chunk order, so a report depends only on its inputs.

use num_complex::Complex64;
use rand::RngExt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bellman::{
    hausdorff_young_sides, linear_part, pivot_variant, pivots, solve_threshold, swap_product,
    BellmanFunction, ConjugatePair, SwapInstance,
};
use crate::error::{invalid, Result};
use crate::norms::{lp_norm, mean_norm};
use crate::su11::{arsinh, Su11Element};

use super::sampling::{chunk_rng, regime_rng, sample_factors, Regime, CHUNK};
use super::{SCHEMA_VERSION, SLACK, SUBNORMAL_GUARD};

/// The instance behind the largest observed ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub factors: Vec<Su11Element>,
}

/// Running tally for one inequality at one exponent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityStats {
    pub inequality: String,
    pub regime: Regime,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub evaluations: u64,
    /// Evaluations outside the inequality's stated applicability.
    pub skipped: u64,
    /// Evaluations where a side fell below the subnormal guard.
    pub guarded: u64,
    pub violations: u64,
    pub max_ratio: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl InequalityStats {
    pub fn new(inequality: &str, regime: Regime, p: Option<f64>) -> Self {
        InequalityStats {
            inequality: inequality.to_string(),
            regime,
            p,
            evaluations: 0,
            skipped: 0,
            guarded: 0,
            violations: 0,
            max_ratio: 0.0,
            witness: None,
        }
    }

    /// Record `lhs ≤ rhs` for one evaluation.
    pub fn record(&mut self, trial: u64, lhs: f64, rhs: f64, factors: &[Su11Element]) {
        self.evaluations += 1;
        if !(lhs.is_finite() && rhs.is_finite()) {
            self.violations += 1;
            if self.max_ratio.is_finite() {
                self.max_ratio = f64::INFINITY;
                self.witness = Some(Witness { trial, lhs, rhs, factors: factors.to_vec() });
            }
            return;
        }
        if lhs <= SUBNORMAL_GUARD || rhs <= SUBNORMAL_GUARD {
            self.guarded += 1;
            return;
        }
        let ratio = lhs / rhs;
        if lhs > rhs * (1.0 + SLACK) {
            self.violations += 1;
        }
        if ratio > self.max_ratio {
            self.max_ratio = ratio;
            self.witness = Some(Witness { trial, lhs, rhs, factors: factors.to_vec() });
        }
    }

    pub fn skip(&mut self) {
        self.evaluations += 1;
        self.skipped += 1;
    }

    /// Fold a later chunk into this one; ties keep the earlier witness.
    pub fn merge(&mut self, other: InequalityStats) {
        self.evaluations += other.evaluations;
        self.skipped += other.skipped;
        self.guarded += other.guarded;
        self.violations += other.violations;
        if other.max_ratio > self.max_ratio {
            self.max_ratio = other.max_ratio;
            self.witness = other.witness;
        }
    }
}

fn merge_chunks(chunks: Vec<Vec<InequalityStats>>) -> Vec<InequalityStats> {
    let mut iter = chunks.into_iter();
    let mut acc = iter.next().unwrap_or_default();
    for chunk in iter {
        for (a, b) in acc.iter_mut().zip(chunk) {
            a.merge(b);
        }
    }
    acc
}

fn chunk_ranges(trials: u64) -> Vec<(u64, std::ops::Range<u64>)> {
    let chunk = CHUNK as u64;
    (0..trials.div_ceil(chunk))
        .map(|c| (c, c * chunk..((c + 1) * chunk).min(trials)))
        .collect()
}

fn pairs_for(p_grid: &[f64]) -> Result<Vec<ConjugatePair>> {
    if p_grid.is_empty() {
        return Err(invalid("the p-grid is empty"));
    }
    p_grid.iter().map(|&p| ConjugatePair::new(p)).collect()
}

/// Outcome of [`fuzz_swap_inequality`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwapFuzzReport {
    pub schema_version: u32,
    pub d: u32,
    pub regime: Regime,
    pub seed: u64,
    pub trials: u64,
    pub slack: f64,
    pub threshold: f64,
    pub per_p: Vec<InequalityStats>,
    pub violations: u64,
    pub passed: bool,
}

/// Sample swap instances in `regime` and test
/// `(1/d Σ_k β(|B_k|)^q)^(1/q) ≤ (Σ_j β(|b_j|)^p)^(1/p)` at every `p`.
pub fn fuzz_swap_inequality(
    d: u32,
    regime: Regime,
    trials: u64,
    seed: u64,
    p_grid: &[f64],
) -> Result<SwapFuzzReport> {
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    let bf = solve_threshold(d)?;
    let pairs = pairs_for(p_grid)?;
    let chunks: Vec<Vec<InequalityStats>> = chunk_ranges(trials)
        .into_par_iter()
        .map(|(chunk, range)| {
            let mut rng = regime_rng(seed, d, regime, chunk);
            let mut stats: Vec<_> = pairs
                .iter()
                .map(|pair| InequalityStats::new("swap", regime, Some(pair.p())))
                .collect();
            for trial in range {
                let factors = sample_factors(d as usize, regime, bf.threshold(), &mut rng);
                let inst = swap_product(&factors).expect("d ≥ 2");
                let lhs: Vec<f64> = inst.outputs.iter().map(|g| bf.value(g.abs_b())).collect();
                let rhs: Vec<f64> = factors.iter().map(|g| bf.value(g.abs_b())).collect();
                for (s, pair) in stats.iter_mut().zip(&pairs) {
                    s.record(trial, mean_norm(&lhs, pair.q()), lp_norm(&rhs, pair.p()), &factors);
                }
            }
            stats
        })
        .collect();
    let per_p = merge_chunks(chunks);
    let violations = per_p.iter().map(|s| s.violations).sum();
    Ok(SwapFuzzReport {
        schema_version: SCHEMA_VERSION,
        d,
        regime,
        seed,
        trials,
        slack: SLACK,
        threshold: bf.threshold(),
        per_p,
        violations,
        passed: violations == 0,
    })
}

/// Checks of the case analysis; `per_p` marks exponent-dependent ones.
struct Check {
    name: &'static str,
    per_p: bool,
}

const CASE1_CHECKS: [Check; 6] = [
    Check { name: "case1-rough-sum", per_p: false },
    Check { name: "case1-rough-bound", per_p: false },
    Check { name: "case1-nonlinear-perturbation", per_p: true },
    Check { name: "case1-jensen", per_p: true },
    Check { name: "case1-energy-gap", per_p: true },
    Check { name: "linear-terms-hy", per_p: true },
];

const CASE2_CHECKS: [Check; 6] = [
    Check { name: "pivot-terms-hy", per_p: true },
    Check { name: "case2-reduced", per_p: true },
    Check { name: "case2-power-mean", per_p: true },
    Check { name: "case2-mean-value", per_p: true },
    Check { name: "case2-perturbation", per_p: true },
    Check { name: "case2-pivot-gap", per_p: true },
];

const CASE3_CHECKS: [Check; 5] = [
    Check { name: "case3-spectral-norm", per_p: false },
    Check { name: "case3-arsinh", per_p: false },
    Check { name: "case3-split-upper", per_p: false },
    Check { name: "case3-split-big", per_p: false },
    Check { name: "case3-pointwise", per_p: false },
];

fn checks_for(regime: Regime) -> &'static [Check] {
    match regime {
        Regime::Case1 => &CASE1_CHECKS,
        Regime::Case2 => &CASE2_CHECKS,
        Regime::Case3 => &CASE3_CHECKS,
        Regime::Mixed => &[],
    }
}

/// Stats laid out check by check, with one slot per `p` for exponent-dependent
/// checks.
struct Tally<'a> {
    stats: Vec<InequalityStats>,
    offsets: Vec<usize>,
    trial: u64,
    factors: &'a [Su11Element],
}

impl<'a> Tally<'a> {
    fn new(regime: Regime, pairs: &[ConjugatePair]) -> Self {
        let mut stats = Vec::new();
        let mut offsets = Vec::new();
        for check in checks_for(regime) {
            offsets.push(stats.len());
            if check.per_p {
                for pair in pairs {
                    stats.push(InequalityStats::new(check.name, regime, Some(pair.p())));
                }
            } else {
                stats.push(InequalityStats::new(check.name, regime, None));
            }
        }
        Tally { stats, offsets, trial: 0, factors: &[] }
    }

    fn put(&mut self, check: usize, pi: usize, lhs: f64, rhs: f64) {
        let slot = self.offsets[check] + pi;
        self.stats[slot].record(self.trial, lhs, rhs, self.factors);
    }

    fn skip(&mut self, check: usize, pi: usize) {
        self.stats[self.offsets[check] + pi].skip();
    }
}

fn xexp(x: f64) -> f64 {
    x * (-x).exp()
}

fn case1(tally: &mut Tally, inst: &SwapInstance, pairs: &[ConjugatePair]) {
    let d = inst.d as usize;
    let df = d as f64;
    let b = inst.factor_b_abs();
    let a: Vec<f64> = inst.factors.iter().map(Su11Element::abs_a).collect();
    let big_b = inst.output_b_abs();
    let (_, m_star) = pivots(&b);
    let (lin_big, lin_small) = linear_part(&inst.factors);
    let lin_big: Vec<f64> = lin_big.iter().map(|z| z.norm()).collect();
    let lin_small: Vec<f64> = lin_small.iter().map(|z| z.norm()).collect();

    let rough_sum: f64 = (0..d)
        .map(|j| {
            b[j] * (0..d)
                .filter(|&l| l != j)
                .map(|l| a[l] + b[l])
                .product::<f64>()
        })
        .sum();
    let rough_cap = 0.125 * df.powi(-4);
    for &bk in &big_b {
        tally.put(0, 0, bk, rough_sum);
        tally.put(1, 0, bk, rough_cap);
    }

    let gap = 0.125 * df.powi(-2) * b[m_star] * b[m_star];
    let g_big: Vec<f64> = big_b.iter().map(|&x| xexp(x)).collect();
    let g_lin: Vec<f64> = lin_big.iter().map(|&x| xexp(x)).collect();
    let g_small: Vec<f64> = b.iter().map(|&x| xexp(x)).collect();
    for (pi, pair) in pairs.iter().enumerate() {
        let (p, q) = (pair.p(), pair.q());
        let lin_mean = mean_norm(&g_lin, q);
        let bp_norm = lp_norm(&lin_small, p);
        tally.put(2, pi, mean_norm(&g_big, q), lin_mean + gap);
        tally.put(3, pi, lin_mean, xexp(bp_norm));
        tally.put(4, pi, xexp(bp_norm), lp_norm(&g_small, p) - gap);
        tally.put(5, pi, mean_norm(&lin_big, q), bp_norm);
    }
}

fn case2(tally: &mut Tally, inst: &SwapInstance, pairs: &[ConjugatePair]) {
    let d = inst.d as usize;
    let df = d as f64;
    let b = inst.factor_b_abs();
    let big_b = inst.output_b_abs();
    let (m, m_star) = pivots(&b);
    let a_m = inst.factors[m].abs_a();
    let b_m = b[m];
    let b_star = b[m_star];
    let pivot_terms: Vec<f64> = pivot_variant(&inst.factors, m)
        .expect("pivot in range")
        .iter()
        .map(|z| z.norm())
        .collect();
    let shifted: Vec<f64> = big_b.iter().map(|&x| 1.0 + arsinh(x)).collect();

    for (pi, pair) in pairs.iter().enumerate() {
        let (p, q) = (pair.p(), pair.q());
        let others: f64 = (0..d).filter(|&j| j != m).map(|j| b[j].powf(p)).sum();
        let pivot_norm = (b_m.powf(p) + a_m.powf(p) * others).powf(1.0 / p);
        let k_const = 2f64.powf(4.0 * p - 1.0) * df.powf(5.0 * p);
        let mean_q = mean_norm(&big_b, q);
        let lhs = mean_norm(&shifted, q / 2.0).powf(p / 2.0);
        let at_mean = (1.0 + arsinh(mean_q)).powf(p / 2.0);
        let at_pivot = (1.0 + arsinh(b_m)).powf(p / 2.0);

        tally.put(0, pi, mean_norm(&pivot_terms, q), pivot_norm);
        tally.put(
            1,
            pi,
            lhs,
            at_pivot + 2f64.powf(4.0 * p) * df.powf(5.0 * p) * b_star.powf(p),
        );
        tally.put(2, pi, lhs, at_mean);
        if mean_q >= b_m {
            tally.put(3, pi, at_mean, at_pivot + (mean_q - b_m) / a_m);
        } else {
            tally.skip(3, pi);
        }
        tally.put(4, pi, mean_q, pivot_norm + k_const * a_m * b_star.powf(p));
        tally.put(5, pi, pivot_norm, b_m + k_const * a_m * b_star.powf(p));
    }
}

fn case3(tally: &mut Tally, inst: &SwapInstance, bf: &BellmanFunction) {
    let d = inst.d as usize;
    let df = d as f64;
    let t_d = bf.threshold();
    let b = inst.factor_b_abs();
    let norm_product: f64 = inst.factors.iter().map(Su11Element::spectral_norm).product();
    let arsinh_sum: f64 = b.iter().map(|&x| arsinh(x)).sum();
    let beta_sq: Vec<f64> = b.iter().map(|&x| bf.value(x).powi(2)).collect();
    let beta_sq_sum: f64 = beta_sq.iter().sum();

    let (mut big_arsinh, mut big_beta_sq, mut small_count) = (0.0, 0.0, 0usize);
    for (j, &x) in b.iter().enumerate() {
        if x > t_d {
            big_arsinh += arsinh(x);
            big_beta_sq += beta_sq[j];
        } else {
            small_count += 1;
        }
    }
    let split = (2.0 * df).powi(-10) * (1.0 + big_arsinh + small_count as f64 * arsinh(t_d));

    for out in &inst.outputs {
        let beta_out = bf.value(out.abs_b()).powi(2);
        tally.put(0, 0, out.spectral_norm(), norm_product);
        tally.put(1, 0, arsinh(out.abs_b()), arsinh_sum);
        tally.put(2, 0, beta_out, split);
        tally.put(3, 0, split, big_beta_sq);
        tally.put(4, 0, beta_out, beta_sq_sum);
    }
}

/// Evaluate every check of `case` on one instance. Used by the fuzzer and
/// for hand-built instances.
pub fn evaluate_case(
    case: Regime,
    inst: &SwapInstance,
    bf: &BellmanFunction,
    pairs: &[ConjugatePair],
) -> Vec<InequalityStats> {
    let mut tally = Tally::new(case, pairs);
    tally.factors = &inst.factors;
    run_case(case, &mut tally, inst, bf, pairs);
    tally.stats
}

fn run_case(case: Regime, tally: &mut Tally, inst: &SwapInstance, bf: &BellmanFunction, pairs: &[ConjugatePair]) {
    match case {
        Regime::Case1 => case1(tally, inst, pairs),
        Regime::Case2 => case2(tally, inst, pairs),
        Regime::Case3 => case3(tally, inst, bf),
        Regime::Mixed => {}
    }
}

/// Outcome of [`fuzz_case_lemmas`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseLemmaReport {
    pub schema_version: u32,
    pub d: u32,
    pub seed: u64,
    pub trials_per_case: u64,
    pub slack: f64,
    pub threshold: f64,
    pub inequalities: Vec<InequalityStats>,
    pub violations: u64,
    pub passed: bool,
}

/// Sample `trials` instances in each of the three cases and check every
/// intermediate inequality of that case.
pub fn fuzz_case_lemmas(d: u32, trials: u64, seed: u64, p_grid: &[f64]) -> Result<CaseLemmaReport> {
    if trials == 0 {
        return Err(invalid("at least one trial is required"));
    }
    let bf = solve_threshold(d)?;
    let pairs = pairs_for(p_grid)?;
    let mut inequalities = Vec::new();
    for case in [Regime::Case1, Regime::Case2, Regime::Case3] {
        let chunks: Vec<Vec<InequalityStats>> = chunk_ranges(trials)
            .into_par_iter()
            .map(|(chunk, range)| {
                let mut rng = regime_rng(seed ^ 0x6c65_6d6d_6173, d, case, chunk);
                let mut acc = Tally::new(case, &pairs).stats;
                for trial in range {
                    let factors = sample_factors(d as usize, case, bf.threshold(), &mut rng);
                    let inst = swap_product(&factors).expect("d ≥ 2");
                    let mut tally = Tally::new(case, &pairs);
                    tally.trial = trial;
                    tally.factors = &factors;
                    run_case(case, &mut tally, &inst, &bf, &pairs);
                    for (a, b) in acc.iter_mut().zip(tally.stats) {
                        a.merge(b);
                    }
                }
                acc
            })
            .collect();
        inequalities.extend(merge_chunks(chunks));
    }
    let violations = inequalities.iter().map(|s| s.violations).sum();
    Ok(CaseLemmaReport {
        schema_version: SCHEMA_VERSION,
        d,
        seed,
        trials_per_case: trials,
        slack: SLACK,
        threshold: bf.threshold(),
        inequalities,
        violations,
        passed: violations == 0,
    })
}

/// Outcome of [`fuzz_discrete_hausdorff_young`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteHyReport {
    pub schema_version: u32,
    pub d: u32,
    pub seed: u64,
    pub trials: u64,
    pub slack: f64,
    pub per_p: Vec<(f64, u64, f64)>,
    pub parseval_max_rel_err: f64,
    pub violations: u64,
    pub passed: bool,
}

/// Random complex `d`-tuples (with random zero entries) against
/// `(1/d Σ|Z_k|^q)^(1/q) ≤ (Σ|z_j|^p)^(1/p)`, plus the `p = 2` equality.
pub fn fuzz_discrete_hausdorff_young(
    d: u32,
    trials: u64,
    seed: u64,
    p_grid: &[f64],
    slack: f64,
) -> Result<DiscreteHyReport> {
    if d < 2 {
        return Err(invalid("d must be at least 2"));
    }
    let pairs = pairs_for(p_grid)?;
    let two = ConjugatePair::new(2.0)?;
    let chunks: Vec<(Vec<(u64, f64)>, f64)> = chunk_ranges(trials)
        .into_par_iter()
        .map(|(chunk, range)| {
            let mut rng = chunk_rng(seed, d as u64, 0x4859, chunk);
            let mut per_p = vec![(0u64, 0.0f64); pairs.len()];
            let mut parseval = 0.0f64;
            for _ in range {
                let z: Vec<Complex64> = (0..d)
                    .map(|_| {
                        if rng.random_bool(0.2) {
                            Complex64::new(0.0, 0.0)
                        } else {
                            Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
                        }
                    })
                    .collect();
                for ((viol, worst), pair) in per_p.iter_mut().zip(&pairs) {
                    let (lhs, rhs) = hausdorff_young_sides(&z, *pair);
                    if rhs > 0.0 {
                        *worst = worst.max(lhs / rhs);
                        if lhs > rhs * (1.0 + slack) {
                            *viol += 1;
                        }
                    }
                }
                let (lhs, rhs) = hausdorff_young_sides(&z, two);
                if rhs > 0.0 {
                    parseval = parseval.max((lhs - rhs).abs() / rhs);
                }
            }
            (per_p, parseval)
        })
        .collect();
    let mut per_p: Vec<(f64, u64, f64)> = pairs.iter().map(|pair| (pair.p(), 0, 0.0)).collect();
    let mut parseval_max_rel_err = 0.0f64;
    for (chunk, parseval) in chunks {
        for (acc, (viol, worst)) in per_p.iter_mut().zip(chunk) {
            acc.1 += viol;
            acc.2 = acc.2.max(worst);
        }
        parseval_max_rel_err = parseval_max_rel_err.max(parseval);
    }
    let violations = per_p.iter().map(|e| e.1).sum();
    Ok(DiscreteHyReport {
        schema_version: SCHEMA_VERSION,
        d,
        seed,
        trials,
        slack,
        per_p,
        parseval_max_rel_err,
        violations,
        passed: violations == 0 && parseval_max_rel_err <= 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bellman::P_GRID;

    fn pairs() -> Vec<ConjugatePair> {
        P_GRID.iter().map(|&p| ConjugatePair::new(p).unwrap()).collect()
    }

    #[test]
    fn all_identity_instance_holds_everywhere() {
        let bf = solve_threshold(3).unwrap();
        let inst = swap_product(&[Su11Element::IDENTITY; 3]).unwrap();
        let (lhs, rhs) = inst.swapping_sides(&bf, ConjugatePair::new(1.5).unwrap());
        assert_eq!((lhs, rhs), (0.0, 0.0));
        for case in [Regime::Case1, Regime::Case2, Regime::Case3] {
            for s in evaluate_case(case, &inst, &bf, &pairs()) {
                assert_eq!(s.violations, 0, "{} {:?}", s.inequality, s.p);
            }
        }
    }

    #[test]
    fn hand_instance_two_boosts() {
        // B_0 = sinh 2s, B_1 = 0, so the left side is (½ β(sinh 2s)^q)^(1/q)
        let bf = solve_threshold(2).unwrap();
        for s in [0.001, 0.01, 0.1] {
            let inst = swap_product(&[Su11Element::boost(s), Su11Element::boost(s)]).unwrap();
            for &p in &P_GRID {
                let pair = ConjugatePair::new(p).unwrap();
                let (q, bs) = (pair.q(), bf.value(s.sinh()));
                let lhs = bf.value((2.0 * s).sinh()) * 0.5f64.powf(1.0 / q);
                let rhs = bs * 2f64.powf(1.0 / p);
                let (l2, r2) = inst.swapping_sides(&bf, pair);
                assert!((l2 - lhs).abs() <= 1e-12 * lhs);
                assert!((r2 - rhs).abs() <= 1e-12 * rhs);
                assert!(lhs <= rhs * (1.0 + SLACK), "s={s} p={p}");
            }
        }
    }

    #[test]
    fn stats_merge_keeps_earliest_on_ties() {
        let mut a = InequalityStats::new("x", Regime::Case1, None);
        let mut b = InequalityStats::new("x", Regime::Case1, None);
        a.record(0, 1.0, 2.0, &[]);
        b.record(5, 1.0, 2.0, &[]);
        b.record(6, 3.0, 1.0, &[]);
        let mut c = a.clone();
        c.merge(InequalityStats { max_ratio: 0.5, ..b.clone() });
        assert_eq!(c.witness.as_ref().unwrap().trial, 0);
        a.merge(b);
        assert_eq!(a.violations, 1);
        assert_eq!(a.witness.unwrap().trial, 6);
    }

    #[test]
    fn subnormal_guard_suppresses_failures() {
        let mut s = InequalityStats::new("x", Regime::Case1, None);
        s.record(0, 1e-310, 1e-320, &[]);
        assert_eq!((s.violations, s.guarded), (0, 1));
        s.record(1, f64::NAN, 1.0, &[]);
        assert_eq!(s.violations, 1);
    }

    #[test]
    fn small_fuzz_runs_are_clean_and_reproducible() {
        let a = fuzz_swap_inequality(2, Regime::Mixed, 3000, 42, &P_GRID).unwrap();
        assert!(a.passed, "{:?}", a.per_p);
        assert_eq!(a.per_p[0].evaluations, 3000);
        let b = fuzz_swap_inequality(2, Regime::Mixed, 3000, 42, &P_GRID).unwrap();
        assert_eq!(a, b);
        let lemmas = fuzz_case_lemmas(3, 500, 7, &P_GRID).unwrap();
        for s in &lemmas.inequalities {
            assert_eq!(s.violations, 0, "{} {:?} {}", s.inequality, s.p, s.max_ratio);
        }
    }

    #[test]
    fn discrete_hy_small_run() {
        let r = fuzz_discrete_hausdorff_young(4, 2000, 1, &P_GRID, 1e-12).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
