//! Command line front end. Every command writes a CSV table to stdout or
//! to `--out`; `build` writes the solution file to `--out` and its summary
//! to stdout.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use kolmonet_core::bounds::{self, Budget, RegularityParams};
use kolmonet_core::builder::{mc_euler_average, sample_noise, to_hex};
use kolmonet_core::reference::{self, TestProblem};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::study::{num, Table};
use crate::{io, parallel, study};

#[derive(Debug, Parser)]
#[command(name = "kolmonet", version, about = "ReLU network solutions of Kolmogorov PDEs with certified size and error")]
pub struct Cli {
    /// TOML file with defaults for each command; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Budget (N, M, delta) and network size guaranteed for accuracy eps.
    Plan(PlanArgs),
    /// Build a solution network for a reference problem.
    Build(BuildArgs),
    /// Estimate the error of a saved solution network.
    Verify(VerifyArgs),
    /// Run a property or convergence study.
    Study(StudyArgs),
}

#[derive(Debug, clap::Args)]
pub struct PlanArgs {
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub eta: Option<f64>,
    #[arg(long = "T")]
    pub horizon: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, clap::Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Euler steps; with --M and --delta overrides the planned budget.
    #[arg(long = "N")]
    pub steps: Option<usize>,
    #[arg(long = "M")]
    pub samples: Option<usize>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Target accuracy when no explicit budget is given.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub problem: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
pub enum StudyKind {
    Euler,
    Weak,
    Calculus,
    Bounds,
}

#[derive(Debug, clap::Args)]
pub struct StudyArgs {
    pub kind: StudyKind,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// Rows whose check failed; a nonzero count maps to exit status 1.
    pub violations: usize,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.violations == 0 {
            0
        } else {
            1
        }
    }
}

fn problem(name: &str, d: usize) -> Result<TestProblem> {
    if d == 0 {
        return Err(Error::Usage("d must be at least 1".into()));
    }
    reference::by_name(name, d).ok_or_else(|| Error::UnknownProblem(name.into()))
}

fn plan(a: &PlanArgs, cfg: &Config) -> Result<Table> {
    let f = &cfg.plan;
    let d = a.d.or(f.d).unwrap_or(1);
    let eps = a.eps.or(f.eps).unwrap_or(1.0);
    let params = RegularityParams::new(
        a.horizon.or(f.horizon).unwrap_or(1.0),
        a.kappa.or(f.kappa).unwrap_or(1.0),
        a.eta.or(f.eta).unwrap_or(1.0),
        a.p.or(f.p).unwrap_or(2.0),
    )
    .map_err(|e| Error::Usage(e.to_string()))?;
    let plan = bounds::plan_budget(&params, d, eps).map_err(|e| Error::Usage(e.to_string()))?;
    let mut t = Table::new(&["quantity", "value", "log10"]);
    let mut row = |name: &str, m: bounds::Magnitude| {
        t.push(vec![name.into(), m.value().map(num).unwrap_or_default(), num(m.log10())]);
    };
    row("N", plan.steps);
    row("M", plan.samples);
    row("delta", plan.delta);
    row("cost_constant", plan.cost_constant);
    row("cost", plan.cost);
    t.push(vec!["cost_exponent".into(), num(plan.cost_exponent), String::new()]);
    Ok(t)
}

fn build(a: &BuildArgs, cfg: &Config) -> Result<Table> {
    let f = &cfg.build;
    let name = a.problem.clone().or_else(|| f.problem.clone()).unwrap_or_else(|| "heat_relu".into());
    let tp = problem(&name, a.d.or(f.d).unwrap_or(1))?;
    let out = a.out.clone().or_else(|| f.out.clone()).ok_or_else(|| Error::Usage("build needs --out".into()))?;
    let seed = a.seed.or(f.seed).unwrap_or(0);
    let eps = a.eps.or(f.eps).unwrap_or(1.0);
    let budget = match (a.steps.or(f.steps), a.samples.or(f.samples), a.delta.or(f.delta)) {
        (None, None, None) => None,
        (Some(n), Some(m), Some(delta)) => Some(Budget::new(n, m, delta).map_err(|e| Error::Usage(e.to_string()))?),
        _ => return Err(Error::Usage("give all of N, M and delta, or none of them".into())),
    };
    let sol = parallel::solve(&tp.problem, eps, seed, budget)?;
    io::write_solution(&out, &sol)?;
    let b = &sol.provenance.bounds;
    let budget = sol.provenance.budget;
    let mut t = Table::new(&["quantity", "value"]);
    for (k, v) in [
        ("N", budget.steps.to_string()),
        ("M", budget.samples.to_string()),
        ("delta", num(budget.delta)),
        ("param_count", b.param_count.to_string()),
        ("param_bound", num(b.param_bound)),
        ("param_ratio", num(b.param_count as f64 / b.param_bound)),
        ("error_bound", num(b.error_bound)),
        ("problem_hash", to_hex(&sol.provenance.problem_hash)),
    ] {
        t.push(vec![k.into(), v]);
    }
    Ok(t)
}

fn verify(a: &VerifyArgs, cfg: &Config) -> Result<Table> {
    let f = &cfg.verify;
    let input = a.input.clone().or_else(|| f.input.clone()).ok_or_else(|| Error::Usage("verify needs --in".into()))?;
    let name = a.problem.clone().or_else(|| f.problem.clone()).unwrap_or_else(|| "heat_relu".into());
    let samples = a.samples.or(f.samples).unwrap_or(2000);
    let seed = a.seed.or(f.seed).unwrap_or(0);
    if samples < 2 {
        return Err(Error::Usage("samples must be at least 2".into()));
    }
    let sol = io::read_solution(&input)?;
    let d = sol.net.in_dim().checked_sub(1).filter(|&d| d > 0).ok_or_else(|| Error::Usage("network input must be (t, x)".into()))?;
    let tp = problem(&name, d)?;
    let found = to_hex(&sol.provenance.problem_hash);
    if found != tp.problem.hash_hex() {
        return Err(Error::ProblemMismatch { expected: found, found: format!("{name} (d = {d})") });
    }
    let realize = |t: f64, x: &[f64]| {
        let mut input = Vec::with_capacity(d + 1);
        input.push(t);
        input.extend_from_slice(x);
        sol.net.realize_scalar(&input).expect("input dimension checked")
    };
    let measure = tp.problem.measure();
    let p = tp.problem.params.p;
    let vs_exact = parallel::lp_error(&realize, |t, x| tp.exact(t, x), &measure, p, samples, seed);
    let noise = sample_noise(&tp.problem, &sol.provenance.budget, sol.provenance.seed)?;
    let direct = |t: f64, x: &[f64]| mc_euler_average(&tp.problem, &noise, t, x).expect("shapes checked");
    let vs_mc = parallel::lp_error(&realize, direct, &measure, p, samples, seed);
    let bound = sol.provenance.bounds.error_bound;
    let pass = vs_exact.mean - 3.0 * vs_exact.std_error <= bound + tp.init_error;
    let mut t = Table::new(&[
        "lp_error_vs_exact",
        "std_error",
        "lp_error_vs_mc_average",
        "dnn_error_bound",
        "init_error",
        "pass",
    ]);
    t.push(vec![num(vs_exact.mean), num(vs_exact.std_error), num(vs_mc.mean), num(bound), num(tp.init_error), pass.to_string()]);
    Ok(t)
}

fn emit(table: &Table, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|source| Error::Io { path: path.clone(), source })?;
            table.write_csv(file)?;
        }
        None => table.write_csv(stdout)?,
    }
    Ok(())
}

/// Runs a parsed command, writing tables to `stdout`.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<Outcome> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let pool = parallel::thread_pool()?;
    let (table, out) = pool.install(|| -> Result<(Table, Option<PathBuf>)> {
        Ok(match &cli.command {
            Command::Plan(a) => (plan(a, &cfg)?, None),
            Command::Build(a) => (build(a, &cfg)?, None),
            Command::Verify(a) => (verify(a, &cfg)?, None),
            Command::Study(a) => {
                let seed = a.seed.or(cfg.study.seed).unwrap_or(0);
                let kind = match a.kind {
                    StudyKind::Euler => "euler",
                    StudyKind::Weak => "weak",
                    StudyKind::Calculus => "calculus",
                    StudyKind::Bounds => "bounds",
                };
                let table = study::run(kind, seed).expect("every kind has a study");
                (table, a.out.clone().or_else(|| cfg.study.out.clone()))
            }
        })
    })?;
    emit(&table, out.as_ref(), stdout)?;
    Ok(Outcome { violations: table.violations() })
}
