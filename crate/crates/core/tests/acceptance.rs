//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p nlft-core --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use nlft_core::audit::{
    endpoint_bounds, fuzz_case_lemmas, fuzz_discrete_hausdorff_young, fuzz_swap_inequality,
    hy_ratio_scan, plancherel_table, scale_functional, Regime,
};
use nlft_core::bellman::{audit_beta, hausdorff_young_sides, solve_threshold, ConjugatePair, P_GRID};
use nlft_core::cantor::{DadicInterval, DadicRational};
use nlft_core::engine::{
    direct_oracle_grid, direct_oracle_on, linear_transform, transform, transform_top, StepFunction,
};
use nlft_core::io::{stats_csv, to_json, top_layer_csv};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MASTER_SEED: u64 = 42;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn rng_for(criterion: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(MASTER_SEED ^ (criterion << 32))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng_for(1);
    let mut worst = 0.0f64;
    let mut points = 0usize;
    for i in 0..20 {
        let d = if i % 2 == 0 { 2 } else { 3 };
        let max_total = if d == 2 { 8 } else { 7 };
        let total = rng.random_range(2..=max_total);
        let nx = rng.random_range(0..=total);
        let nxi = total - nx;
        let m = rng.random_range(0..=nxi);
        // keeps ‖f‖₁ of order one so matrix entries stay O(10)
        let amp = rng.random_range(1.0..8.0) / (d as f64).powi(nx as i32);
        let f = StepFunction::random(d, m, nx, amp, &mut rng).unwrap();
        let top = transform_top(&f, nxi).unwrap();
        let oracle = direct_oracle_grid(&f, nxi).unwrap();
        points += oracle.len();
        for (a, b) in top.matrices().iter().zip(&oracle) {
            worst = worst.max(a.max_entry_error(b));
        }
    }
    outcome(
        worst <= 1e-9,
        format!("max entry error {worst:.3e} over {points} grid frequencies (tol 1e-9)"),
    )
}

/// `∫_I |f|`, used for the forward error bound `n·ε·Π‖G_j‖` of an ordered
/// product of `n` cell matrices, whose norms multiply to `e^(∫_I |f|)`.
fn l1_on(f: &StepFunction, interval: &DadicInterval) -> f64 {
    let per_unit = (f.radix() as f64).powi(f.cell_exponent() as i32);
    let lo = (interval.left_endpoint().to_f64() * per_unit).round() as usize;
    let hi = ((interval.right_endpoint().to_f64() * per_unit).round() as usize).min(f.values().len());
    f.values()[lo.min(hi)..hi].iter().map(|v| v.norm()).sum::<f64>() * f.cell_width()
}

fn modulus_constancy() -> Outcome {
    let mut rng = rng_for(2);
    let mut worst_excess = 0.0f64;
    let mut worst_relative = 0.0f64;
    let mut probes = 0usize;
    for i in 0..10 {
        let d: u32 = if i % 2 == 0 { 2 } else { 3 };
        let nx = rng.random_range(0..=3);
        let nxi = 3 - nx;
        let m = rng.random_range(0..=nxi);
        let amp = rng.random_range(1.0..8.0) / (d as f64).powi(nx as i32);
        let f = StepFunction::random(d, m, nx, amp, &mut rng).unwrap();
        let pyramid = transform(&f, nxi).unwrap();
        assert_eq!(pyramid.layers().len(), 4);
        let padded = f.pad_support(2).unwrap();
        let step = padded.support_exponent();
        for layer in pyramid.layers() {
            let count = (d as u64).pow((step as i32 - layer.scale()) as u32);
            for col in 0..layer.columns() {
                for row in 0..layer.rows() {
                    let tile = layer.tile(col, row);
                    let reference = layer.get(col, row);
                    let start = tile.freq.left_endpoint().numerator_at_scale(step).unwrap();
                    let time = DadicInterval::new(d, tile.time.exponent(), tile.time.index()).unwrap();
                    let cells = tile.time.length() * (d as f64).powi(nxi as i32);
                    let floor = cells * f64::EPSILON * l1_on(&f, &time).exp();
                    for j in 0..count {
                        let xi = DadicRational::new(d, start + j, step).unwrap();
                        let g = direct_oracle_on(&padded, nxi, &time, &xi).unwrap();
                        for (x, y) in [(reference.abs_a(), g.abs_a()), (reference.abs_b(), g.abs_b())] {
                            let delta = (x - y).abs();
                            worst_excess = worst_excess.max(delta / (1e-10 * x + floor));
                            if x >= 1e-3 * reference.abs_a() {
                                worst_relative = worst_relative.max(delta / x);
                            }
                        }
                        probes += 1;
                    }
                }
            }
        }
    }
    outcome(
        worst_excess <= 1.0 && worst_relative <= 1e-10,
        format!(
            "{probes} oracle probes: max relative spread {worst_relative:.3e} where |x| >= 1e-3|a|; max spread / (1e-10·|x| + n·eps·e^(∫|f|)) = {worst_excess:.3e}"
        ),
    )
}

fn threshold_bounds() -> Outcome {
    let start = Instant::now();
    let mut worst_residual = 0.0f64;
    let mut all_bracketed = true;
    for d in 2..=64u32 {
        let bf = solve_threshold(d).unwrap();
        let df = d as f64;
        worst_residual = worst_residual.max(bf.residual());
        let t = bf.threshold();
        all_bracketed &= 2f64.powi(-5) * df.powi(-5) < t && t < 2f64.powi(-4) * df.powi(-5);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst_residual <= 1e-14 && all_bracketed && secs <= 1.0,
        format!("d = 2..64: max residual {worst_residual:.3e}, bracket holds: {all_bracketed}, {secs:.3} s"),
    )
}

fn beta_properties() -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for d in [2u32, 3, 5] {
        let a = audit_beta(&solve_threshold(d).unwrap(), 10_000, 1e-10);
        passed &= a.passed;
        parts.push(format!(
            "d={d}: sandwich {:.3}/{:.3}, branches {:.3}/{:.3}, gap {:.1e}",
            a.sandwich_lower_ratio,
            a.sandwich_upper_ratio,
            a.below_lower_branch_ratio,
            a.below_upper_branch_ratio,
            a.continuity_gap
        ));
    }
    outcome(passed, format!("worst ratios (≤ 1 holds) {}", parts.join("; ")))
}

fn swap_inequality() -> Outcome {
    let start = Instant::now();
    let mut violations = 0;
    let mut worst = 0.0f64;
    let mut trials = 0;
    for d in [2u32, 3, 5] {
        for regime in Regime::ALL {
            let r = fuzz_swap_inequality(d, regime, 100_000, MASTER_SEED, &P_GRID).unwrap();
            violations += r.violations;
            trials += r.trials;
            worst = r.per_p.iter().map(|s| s.max_ratio).fold(worst, f64::max);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        violations == 0 && secs <= 300.0,
        format!("{trials} trials x {} exponents: {violations} violations, max LHS/RHS {worst:.12}, {secs:.1} s", P_GRID.len()),
    )
}

fn case_lemmas() -> Outcome {
    let mut violations = 0;
    let mut checks = 0;
    let mut skipped = 0;
    let mut worst = (0.0f64, String::new());
    for d in [2u32, 3, 5] {
        let r = fuzz_case_lemmas(d, 10_000, MASTER_SEED, &P_GRID).unwrap();
        violations += r.violations;
        for s in &r.inequalities {
            checks += s.evaluations;
            skipped += s.skipped;
            if s.max_ratio > worst.0 {
                worst = (s.max_ratio, format!("{} (d={d})", s.inequality));
            }
        }
    }
    outcome(
        violations == 0,
        format!(
            "{checks} evaluations, {skipped} outside the mean-value guard, {violations} violations; tightest {} at ratio {:.12}",
            worst.1, worst.0
        ),
    )
}

fn discrete_hausdorff_young() -> Outcome {
    let mut violations = 0;
    let mut parseval = 0.0f64;
    let mut passed = true;
    for d in 2..=16u32 {
        let r = fuzz_discrete_hausdorff_young(d, 10_000, MASTER_SEED, &P_GRID, 1e-12).unwrap();
        violations += r.violations;
        parseval = parseval.max(r.parseval_max_rel_err);
        passed &= r.passed;
    }
    let one = [Complex64::new(1.0, 0.0); 2];
    let mut equality = 0.0f64;
    for &p in &P_GRID {
        let (lhs, rhs) = hausdorff_young_sides(&one, ConjugatePair::new(p).unwrap());
        equality = equality.max((lhs - rhs).abs() / rhs);
    }
    passed &= equality <= 1e-12;
    outcome(
        passed,
        format!("d = 2..16: {violations} violations, Parseval rel err {parseval:.2e}, (1,1) equality gap {equality:.2e}"),
    )
}

fn scale_monotonicity() -> Outcome {
    let mut rng = rng_for(8);
    let ps = [1.01, 1.2, 1.5, 1.8, 2.0];
    let mut failures = 0;
    let mut endpoint_failures = 0;
    let mut worst = 0.0f64;
    for i in 0..100 {
        let d: u32 = if i % 2 == 0 { 2 } else { 3 };
        let m = rng.random_range(0..=3);
        let amp = rng.random_range(0.1..4.0);
        let p = ps[i % ps.len()];
        let f = StepFunction::random(d, m, 3, amp, &mut rng).unwrap();
        let pyramid = transform(&f, 3).unwrap();
        let bf = solve_threshold(d).unwrap();
        let pair = ConjugatePair::new(p).unwrap();
        let r = scale_functional(&pyramid, &bf, pair).unwrap();
        if !r.monotone {
            failures += 1;
        }
        worst = worst.max(r.max_violation);
        if !endpoint_bounds(&f, &pyramid, &bf, pair).unwrap().holds {
            endpoint_failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!(
            "100 pyramids (N_x = N_xi = 3): {failures} non-monotone, max relative increase {worst:.2e}; endpoint bounds failed {endpoint_failures}"
        ),
    )
}

fn truncated_plancherel() -> Outcome {
    let mut rng = rng_for(9);
    let f = StepFunction::random(2, 8, 1, 1.0, &mut rng)
        .unwrap()
        .normalized_l2()
        .unwrap();
    let windows: Vec<u32> = (2..=8).collect();
    let r = plancherel_table(&f, &windows).unwrap();
    let table: Vec<String> = r.defects.iter().map(|x| format!("{x:.3e}")).collect();
    outcome(
        r.nonnegative && r.nonincreasing && r.strict,
        format!(
            "defect over N_xi = 2..8: [{}]; nonnegative {}, nonincreasing {}, strict {}",
            table.join(", "),
            r.nonnegative,
            r.nonincreasing,
            r.strict
        ),
    )
}

fn uniform_hausdorff_young() -> Outcome {
    let mut rng = rng_for(10);
    let bf = solve_threshold(2).unwrap();
    let mut grid = vec![1.0];
    grid.extend_from_slice(&P_GRID);
    let mut sup = 0.0f64;
    let mut cap = 0.0;
    let mut near = (f64::INFINITY, 0.0f64);
    let mut within = true;
    for _ in 0..50 {
        let m = rng.random_range(0..=2);
        let nx = rng.random_range(0..=2);
        let f = StepFunction::random(2, m, nx, rng.random_range(0.2..3.0), &mut rng).unwrap();
        let r = hy_ratio_scan(&f, 3, &bf, &grid).unwrap();
        within &= r.within_cap;
        sup = sup.max(r.sup_ratio);
        cap = r.theoretical_cap;
        let q = r.ratio_at(1.999).unwrap() / r.ratio_at(2.0).unwrap();
        near = (near.0.min(q), near.1.max(q));
    }
    let uniform = near.0 >= 0.9 && near.1 <= 1.1;
    outcome(
        within && uniform,
        format!(
            "sup ratio {sup:.4} vs derived cap {cap:.3e}; ratio(1.999)/ratio(2) in [{:.4}, {:.4}]",
            near.0, near.1
        ),
    )
}

fn linearization_order() -> Outcome {
    let mut rng = rng_for(11);
    let f = StepFunction::random(2, 1, 2, 1.0, &mut rng).unwrap();
    let nxi = 3;
    let lin = linear_transform(&f, nxi).unwrap();
    let err = |eps: f64| {
        let top = transform_top(&f.scaled(eps).unwrap(), nxi).unwrap();
        top.matrices()
            .iter()
            .zip(&lin)
            .map(|(g, l)| (g.b / eps - l).norm())
            .fold(0.0, f64::max)
    };
    let (e2, e3) = (err(1e-2), err(1e-3));
    let ratio = e2 / e3;
    outcome(
        (50.0..=200.0).contains(&ratio),
        format!("error {e2:.3e} at 1e-2, {e3:.3e} at 1e-3, ratio {ratio:.2}"),
    )
}

fn reports_once(threads: usize) -> Vec<String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(|| {
            let swap = fuzz_swap_inequality(3, Regime::Mixed, 20_000, MASTER_SEED, &P_GRID).unwrap();
            let lemmas = fuzz_case_lemmas(2, 5_000, MASTER_SEED, &P_GRID).unwrap();
            let mut rng = rng_for(12);
            let f = StepFunction::random(3, 1, 2, 1.0, &mut rng).unwrap();
            let top = transform_top(&f, 2).unwrap();
            let plancherel = plancherel_table(&f, &[1, 2, 3]).unwrap();
            vec![
                to_json(&swap).unwrap(),
                to_json(&lemmas).unwrap(),
                stats_csv(2, &lemmas.inequalities).unwrap(),
                top_layer_csv(&top).unwrap(),
                to_json(&plancherel).unwrap(),
            ]
        })
}

fn reproducibility() -> Outcome {
    let a = reports_once(1);
    let b = reports_once(1);
    let c = reports_once(4);
    let bytes: usize = a.iter().map(String::len).sum();
    outcome(
        a == b && a == c,
        format!("{} reports ({bytes} bytes) identical across repeated runs and 1 vs 4 threads", a.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("oracle equivalence", oracle_equivalence),
        ("modulus constancy on frequency intervals", modulus_constancy),
        ("threshold t_d residual and bracket", threshold_bounds),
        ("beta_d sandwich, branch bounds, continuity", beta_properties),
        ("swapping inequality fuzz", swap_inequality),
        ("case lemma fuzz", case_lemmas),
        ("discrete Hausdorff-Young on Z_d", discrete_hausdorff_young),
        ("monotonicity of the scale functional", scale_monotonicity),
        ("truncated Plancherel defect", truncated_plancherel),
        ("uniform Hausdorff-Young ratio scan", uniform_hausdorff_young),
        ("linearization order", linearization_order),
        ("byte-identical reports", reproducibility),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.passed { "PASS" } else { "FAIL" };
        if !o.passed {
            failed += 1;
        }
        println!(
            "AC{:<2} {status} {name}: {} [{:.1} s]",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
