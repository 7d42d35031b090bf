//! Multi-threaded drivers whose results match the sequential core
//! functions bit for bit.

use kolmonet_core::ann_calculus::{average_nets, compose, Network};
use kolmonet_core::bounds::{self, Budget};
use kolmonet_core::builder::{
    build_euler_net, planned_budget, sample_noise, BoundValues, BuildError, PdeProblem, Provenance, SolutionNet,
};
use kolmonet_core::sde_sim::{lp_term, BrownianGrid, UniformSpaceTimeMeasure};
use kolmonet_core::stats::Estimate;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub const THREADS_VAR: &str = "KOLMONET_THREADS";

/// Thread pool sized by `KOLMONET_THREADS` when set, else by rayon's default.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_VAR) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Usage(format!("{THREADS_VAR} must be a positive integer, got `{v}`")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::Usage(format!("cannot start thread pool: {e}")))
}

/// Same network as the core builder, with the per-path networks built in
/// parallel.
pub fn build_mc_average_net(problem: &PdeProblem, budget: &Budget, noise: &BrownianGrid) -> std::result::Result<Network, BuildError> {
    if noise.paths() != budget.samples || noise.grid().steps() != budget.steps || noise.dim() != problem.dim() {
        return Err(BuildError::InvalidArgument("noise does not match budget and problem"));
    }
    let nets = (0..budget.samples)
        .into_par_iter()
        .map(|m| {
            let euler = build_euler_net(&problem.drift, noise.path(m), noise.grid(), budget.delta)?;
            Ok(compose(&problem.init, &euler.net)?)
        })
        .collect::<std::result::Result<Vec<_>, BuildError>>()?;
    let w = 1.0 / budget.samples as f64;
    Ok(average_nets(&nets, &vec![w; budget.samples])?)
}

/// Parallel counterpart of the core `solve`.
pub fn solve(problem: &PdeProblem, eps: f64, seed: u64, budget: Option<Budget>) -> std::result::Result<SolutionNet, BuildError> {
    let budget = match budget {
        Some(b) => b,
        None => planned_budget(problem, eps)?,
    };
    let noise = sample_noise(problem, &budget, seed)?;
    let net = build_mc_average_net(problem, &budget, &noise)?;
    let d = problem.dim();
    let param_count = net.param_count();
    let param_bound = bounds::dnn_param_bound(&problem.params, d, budget.steps, budget.samples, budget.delta);
    if param_count as f64 > param_bound {
        return Err(BuildError::SizeBound { params: param_count, bound: param_bound });
    }
    let error_bound = bounds::dnn_error_bound(
        &problem.params,
        d,
        budget.steps as f64,
        budget.samples as f64,
        budget.delta,
        problem.measure().mass(),
    );
    Ok(SolutionNet {
        net,
        provenance: Provenance {
            problem_hash: problem.hash(),
            seed,
            budget,
            bounds: BoundValues { param_count, param_bound, error_bound },
        },
    })
}

/// Parallel `L^p(nu)` distance estimate; identical to the sequential core
/// estimator for the same seed.
pub fn lp_error<A, B>(fn_a: A, fn_b: B, measure: &UniformSpaceTimeMeasure, p: f64, samples: usize, seed: u64) -> Estimate
where
    A: Fn(f64, &[f64]) -> f64 + Sync,
    B: Fn(f64, &[f64]) -> f64 + Sync,
{
    let vals: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|k| {
            let (t, x) = measure.sample(seed, k);
            lp_term(fn_a(t, &x) - fn_b(t, &x), p)
        })
        .collect();
    Estimate::from_samples(&vals).root(p)
}
