//! Argument handling and command dispatch for the `nlft` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nlft_core::audit::{
    fuzz_case_lemmas, fuzz_swap_inequality, hy_ratio_scan, plancherel_table, Regime, SCHEMA_VERSION,
};
use nlft_core::bellman::{audit_beta, log_grid, max_second_difference, phi, psi, solve_threshold, P_GRID};
use nlft_core::engine::{direct_oracle_grid, grid_frequency, transform_top, StepFunction};
use nlft_core::io::{parse_function_file, plancherel_csv, ratio_csv, stats_csv, to_json, top_layer_csv};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "nlft", version, about = "Cantor-group SU(1,1) nonlinear Fourier transform and its audits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Radix d (default 2, or taken from --input)
    #[arg(long, global = true)]
    pub d: Option<u32>,

    /// Time support exponent N_x (default 2, or taken from --input)
    #[arg(long, global = true)]
    pub nx: Option<u32>,

    /// Frequency window exponent N_ξ
    #[arg(long, global = true, default_value_t = 2)]
    pub nxi: u32,

    /// Cell exponent M of a generated function (default 0)
    #[arg(long, global = true)]
    pub cell_exponent: Option<u32>,

    /// Largest modulus of a generated function's values
    #[arg(long, global = true, default_value_t = 1.0)]
    pub amplitude: f64,

    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = 10_000)]
    pub trials: u64,

    /// Comma-separated exponents p in [1, 2]
    #[arg(long, global = true, default_value = "1.001,1.01,1.1,1.25,1.5,1.75,1.9,1.99,1.999,2")]
    pub p_grid: String,

    /// StepFunction JSON; a random function from --seed is used otherwise
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Report path (stdout by default)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Report format (csv for `transform`, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Worker threads
    #[arg(long, global = true, env = "NLFT_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FuzzKind {
    /// The swapping inequality in one regime
    Swap,
    /// Every intermediate inequality of the three cases
    Lemmas,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Top layer of the transform as a table over the frequency grid
    Transform,
    /// Butterfly top layer against the quadratic direct evaluation
    OracleCheck,
    /// Plancherel defect for every window exponent up to N_ξ
    Plancherel,
    /// Hausdorff-Young ratios across the p-grid
    HyScan,
    /// Threshold t_d and the properties of β_d
    Bellman,
    /// Seeded fuzzing of the swapping inequality or the case lemmas
    Fuzz {
        #[arg(long, value_enum, default_value = "swap")]
        kind: FuzzKind,
        /// case1, case2, case3 or mixed
        #[arg(long, default_value = "mixed")]
        regime: String,
    },
}

/// Validated run parameters.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub d: Option<u32>,
    pub nx: Option<u32>,
    pub nxi: u32,
    pub cell_exponent: Option<u32>,
    pub amplitude: f64,
    pub seed: u64,
    pub trials: u64,
    pub p_grid: Vec<f64>,
    pub regime: Regime,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
}

pub fn parse_p_grid(spec: &str) -> Result<Vec<f64>> {
    let grid = spec
        .split(',')
        .map(|s| {
            let p: f64 = s.trim().parse().with_context(|| format!("bad exponent {s:?} in --p-grid"))?;
            ensure!((1.0..=2.0).contains(&p), "exponent {p} in --p-grid is outside [1, 2]");
            Ok(p)
        })
        .collect::<Result<Vec<f64>>>()?;
    ensure!(!grid.is_empty(), "--p-grid is empty");
    Ok(grid)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self> {
        let c = cli.common;
        let p_grid = parse_p_grid(&c.p_grid)?;
        let mut regime = Regime::Mixed;
        if let Command::Fuzz { regime: r, .. } = &cli.command {
            regime = r.parse()?;
            ensure!(
                p_grid.iter().all(|&p| p > 1.0),
                "the swapping inequality is stated for 1 < p ≤ 2; drop p = 1 from --p-grid"
            );
        }
        ensure!(c.trials >= 1, "--trials must be at least 1");
        ensure!(c.amplitude.is_finite() && c.amplitude >= 0.0, "--amplitude must be finite and nonnegative");
        if let Some(d) = c.d {
            ensure!(d >= 2, "--d must be at least 2");
        }
        if let Some(n) = c.threads {
            ensure!(n >= 1, "--threads must be at least 1");
        }
        if let Some(path) = &c.input {
            ensure!(path.is_file(), "input file {} does not exist", path.display());
        }
        let format = c.format.unwrap_or(match cli.command {
            Command::Transform => Format::Csv,
            _ => Format::Json,
        });
        Ok(RunConfig {
            command: cli.command,
            d: c.d,
            nx: c.nx,
            nxi: c.nxi,
            cell_exponent: c.cell_exponent,
            amplitude: c.amplitude,
            seed: c.seed,
            trials: c.trials,
            p_grid,
            regime,
            input: c.input,
            out: c.out,
            format,
            threads: c.threads,
        })
    }

    fn radix(&self) -> u32 {
        self.d.unwrap_or(2)
    }

    /// The input function, or a random one drawn from the seed.
    pub fn function(&self) -> Result<StepFunction> {
        match &self.input {
            Some(path) => {
                let f = parse_function_file(path)?;
                if let Some(d) = self.d {
                    ensure!(d == f.radix(), "--d {d} disagrees with d = {} in {}", f.radix(), path.display());
                }
                if let Some(nx) = self.nx {
                    ensure!(
                        nx == f.support_exponent(),
                        "--nx {nx} disagrees with support_exponent = {} in {}",
                        f.support_exponent(),
                        path.display()
                    );
                }
                Ok(f)
            }
            None => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                Ok(StepFunction::random(
                    self.radix(),
                    self.cell_exponent.unwrap_or(0),
                    self.nx.unwrap_or(2),
                    self.amplitude,
                    &mut rng,
                )?)
            }
        }
    }
}

/// What a command produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: String,
    /// One line for the terminal.
    pub summary: String,
    pub passed: bool,
}

impl RunOutcome {
    pub fn emit(&self, out: Option<&Path>) -> Result<()> {
        match out {
            Some(path) => std::fs::write(path, &self.report)
                .with_context(|| format!("cannot write {}", path.display()))?,
            None => std::io::stdout().write_all(self.report.as_bytes())?,
        }
        eprintln!("{}", self.summary);
        Ok(())
    }
}

fn render<T: Serialize>(report: &T, format: Format, csv: impl FnOnce() -> Result<String>) -> Result<String> {
    match format {
        Format::Json => Ok(to_json(report)?),
        Format::Csv => csv(),
    }
}

#[derive(Serialize)]
struct TopRow {
    xi_num: u64,
    xi_scale: u32,
    a: [f64; 2],
    b: [f64; 2],
    size: f64,
}

#[derive(Serialize)]
struct TopReport {
    schema_version: u32,
    d: u32,
    support_exponent: u32,
    freq_exponent: u32,
    rows: Vec<TopRow>,
}

fn transform_cmd(config: &RunConfig) -> Result<RunOutcome> {
    let f = config.function()?;
    let top = transform_top(&f, config.nxi)?;
    let report = render(
        &TopReport {
            schema_version: SCHEMA_VERSION,
            d: f.radix(),
            support_exponent: f.support_exponent(),
            freq_exponent: config.nxi,
            rows: top
                .matrices()
                .iter()
                .enumerate()
                .map(|(k, g)| {
                    let xi = grid_frequency(f.radix(), f.support_exponent(), k);
                    TopRow {
                        xi_num: xi.numerator(),
                        xi_scale: xi.scale(),
                        a: [g.a.re, g.a.im],
                        b: [g.b.re, g.b.im],
                        size: g.size(),
                    }
                })
                .collect(),
        },
        config.format,
        || Ok(top_layer_csv(&top)?),
    )?;
    Ok(RunOutcome {
        report,
        summary: format!(
            "transform: {} grid frequencies, max relative drift {:.2e}",
            top.rows(),
            top.max_relative_residual()
        ),
        passed: true,
    })
}

#[derive(Serialize)]
struct OracleReport {
    schema_version: u32,
    d: u32,
    support_exponent: u32,
    freq_exponent: u32,
    frequencies: usize,
    max_entry_error: f64,
    tolerance: f64,
    passed: bool,
}

const ORACLE_TOLERANCE: f64 = 1e-9;

fn oracle_cmd(config: &RunConfig) -> Result<RunOutcome> {
    let f = config.function()?;
    let top = transform_top(&f, config.nxi)?;
    let oracle = direct_oracle_grid(&f, config.nxi)?;
    let max_entry_error = top
        .matrices()
        .iter()
        .zip(&oracle)
        .map(|(a, b)| a.max_entry_error(b))
        .fold(0.0, f64::max);
    let passed = max_entry_error <= ORACLE_TOLERANCE;
    let r = OracleReport {
        schema_version: SCHEMA_VERSION,
        d: f.radix(),
        support_exponent: f.support_exponent(),
        freq_exponent: config.nxi,
        frequencies: oracle.len(),
        max_entry_error,
        tolerance: ORACLE_TOLERANCE,
        passed,
    };
    let report = render(&r, config.format, || {
        Ok(format!(
            "# nlft oracle-check v{SCHEMA_VERSION}\nd,nx,nxi,frequencies,max_entry_error,tolerance\n{},{},{},{},{},{}\n",
            r.d, r.support_exponent, r.freq_exponent, r.frequencies, r.max_entry_error, r.tolerance
        ))
    })?;
    Ok(RunOutcome {
        report,
        summary: format!("oracle-check: max entry error {max_entry_error:.3e} over {} frequencies", r.frequencies),
        passed,
    })
}

fn plancherel_cmd(config: &RunConfig) -> Result<RunOutcome> {
    let f = config.function()?;
    let windows: Vec<u32> = (0..=config.nxi).collect();
    let r = plancherel_table(&f, &windows)?;
    let passed = r.nonnegative && r.nonincreasing;
    let report = render(&r, config.format, || Ok(plancherel_csv(&r)?))?;
    Ok(RunOutcome {
        report,
        summary: format!(
            "plancherel: ‖f‖₂² = {:.6}, final defect {:.3e}, nonnegative {}, nonincreasing {}",
            r.energy,
            r.defects.last().copied().unwrap_or(0.0),
            r.nonnegative,
            r.nonincreasing
        ),
        passed,
    })
}

fn hy_scan_cmd(config: &RunConfig) -> Result<RunOutcome> {
    let f = config.function()?;
    let bf = solve_threshold(f.radix())?;
    let r = hy_ratio_scan(&f, config.nxi, &bf, &config.p_grid)?;
    let report = render(&r, config.format, || Ok(ratio_csv(&r)?))?;
    Ok(RunOutcome {
        report,
        summary: format!("hy-scan: sup ratio {:.6} (derived cap {:.3e})", r.sup_ratio, r.theoretical_cap),
        passed: r.within_cap,
    })
}

#[derive(Serialize)]
struct BellmanReport {
    schema_version: u32,
    #[serde(flatten)]
    audit: nlft_core::bellman::BetaAudit,
    /// Largest normalized second difference of φ on (0, 1) per q.
    phi_concavity: Vec<(f64, f64)>,
    /// Same for ψ on (0, ∞).
    psi_concavity: Vec<(f64, f64)>,
    concave: bool,
}

const BETA_GRID_POINTS: usize = 10_000;
const CONCAVITY_TOL: f64 = 1e-12;

fn bellman_cmd(config: &RunConfig) -> Result<RunOutcome> {
    let d = config.radix();
    let bf = solve_threshold(d)?;
    let audit = audit_beta(&bf, BETA_GRID_POINTS, nlft_core::audit::SLACK);
    let unit: Vec<f64> = (1..1000).map(|i| i as f64 / 1000.0).collect();
    let wide = log_grid(1e-6, 1e6, 2000);
    let qs = [2.0, 3.0, 5.0, 10.0];
    let phi_concavity: Vec<(f64, f64)> =
        qs.iter().map(|&q| (q, max_second_difference(|t| phi(q, t), &unit))).collect();
    let psi_concavity: Vec<(f64, f64)> =
        qs.iter().map(|&q| (q, max_second_difference(|t| psi(q, t), &wide))).collect();
    let concave = phi_concavity
        .iter()
        .chain(&psi_concavity)
        .all(|&(_, s)| s <= CONCAVITY_TOL);
    let passed = audit.passed && concave;
    let summary = format!(
        "bellman: t_{d} = {:.12e} in ({:.9e}, {:.9e}), residual {:.1e}",
        audit.threshold, audit.lower_bound, audit.upper_bound, audit.residual
    );
    let r = BellmanReport { schema_version: SCHEMA_VERSION, audit, phi_concavity, psi_concavity, concave };
    let report = render(&r, config.format, || {
        let a = &r.audit;
        Ok(format!(
            "# nlft bellman v{SCHEMA_VERSION}\nd,threshold,residual,lower_bound,upper_bound,continuity_gap,sandwich_lower_ratio,sandwich_upper_ratio,below_lower_branch_ratio,below_upper_branch_ratio,concave\n{},{},{},{},{},{},{},{},{},{},{}\n",
            a.d,
            a.threshold,
            a.residual,
            a.lower_bound,
            a.upper_bound,
            a.continuity_gap,
            a.sandwich_lower_ratio,
            a.sandwich_upper_ratio,
            a.below_lower_branch_ratio,
            a.below_upper_branch_ratio,
            r.concave
        ))
    })?;
    Ok(RunOutcome { report, summary, passed })
}

fn fuzz_cmd(config: &RunConfig, kind: FuzzKind) -> Result<RunOutcome> {
    let d = config.radix();
    match kind {
        FuzzKind::Swap => {
            let r = fuzz_swap_inequality(d, config.regime, config.trials, config.seed, &config.p_grid)?;
            let report = render(&r, config.format, || Ok(stats_csv(d, &r.per_p)?))?;
            let mut summary = format!(
                "fuzz swap: d = {d}, {} regime, {} trials, {} violations",
                r.regime, r.trials, r.violations
            );
            if let Some(s) = r.per_p.iter().find(|s| s.violations > 0) {
                summary.push_str(&format!("\nwitness at p = {:?}: {}", s.p, serde_json::to_string(&s.witness)?));
            }
            Ok(RunOutcome { report, summary, passed: r.passed })
        }
        FuzzKind::Lemmas => {
            let r = fuzz_case_lemmas(d, config.trials, config.seed, &config.p_grid)?;
            let report = render(&r, config.format, || Ok(stats_csv(d, &r.inequalities)?))?;
            let mut summary = format!(
                "fuzz lemmas: d = {d}, {} trials per case, {} violations",
                r.trials_per_case, r.violations
            );
            for s in r.inequalities.iter().filter(|s| s.violations > 0) {
                summary.push_str(&format!(
                    "\n{} at p = {:?}: {}",
                    s.inequality,
                    s.p,
                    serde_json::to_string(&s.witness)?
                ));
            }
            Ok(RunOutcome { report, summary, passed: r.passed })
        }
    }
}

/// Execute one command.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    match &config.command {
        Command::Transform => transform_cmd(config),
        Command::OracleCheck => oracle_cmd(config),
        Command::Plancherel => plancherel_cmd(config),
        Command::HyScan => hy_scan_cmd(config),
        Command::Bellman => bellman_cmd(config),
        Command::Fuzz { kind, .. } => fuzz_cmd(config, *kind),
    }
}

/// The default p-grid as a `--p-grid` value.
pub fn default_p_grid() -> String {
    P_GRID.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
}
