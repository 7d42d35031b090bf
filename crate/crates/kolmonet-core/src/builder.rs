//! Construction of the space-time network `Psi` whose realization
//! approximates the Monte Carlo Euler average `(1/M) sum_m g0(Y_t^{m,x})`.
//!
//! For one noise realization `y = (y_1, ..., y_N)` the Euler network
//! computes the grid values `Y_0, ..., Y_N` exactly as affine/ReLU
//! arithmetic, evaluates the hat functions `phi_k(t)` of the uniform grid,
//! and sums `Gamma(phi_k(t), Y_{k,i})` over `k` with a product network
//! `Gamma`. Hat functions of steps not yet reached vanish exactly and the
//! product network maps a zero factor to an exact zero, so the output on
//! `[0, tau_n]` never depends on `y_{n+1}, ..., y_N`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};

use crate::ann_calculus::{
    affine_net, average_nets, compose, growth_product_net, identity_net, identity_of_length,
    parallel, parallel_shared, CalcError, Layer, Matrix, Network, ProductInfo,
};
use crate::bounds::{self, Budget, BoundsError, RegularityParams};
use crate::math::norm;
use crate::sde_sim::{self, BrownianGrid, SimError, TimeGrid};

/// Exponent of the growth-weighted product error.
pub const PRODUCT_EXPONENT: f64 = 3.0;

/// Largest `N * M` that [`solve`] builds from a planned budget.
pub const PLANNED_WORK_CAP: f64 = 1.0e5;

#[derive(Clone, Debug, PartialEq)]
pub enum BuildError {
    Calc(CalcError),
    Sim(SimError),
    Bounds(BoundsError),
    InvalidArgument(&'static str),
    /// The planned budget is too large to build; pass an explicit budget.
    PlanTooLarge { log10_steps: f64, log10_samples: f64 },
    /// The built network exceeds its size bound.
    SizeBound { params: u64, bound: f64 },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Calc(e) => write!(f, "network calculus: {e}"),
            BuildError::Sim(e) => write!(f, "simulation: {e}"),
            BuildError::Bounds(e) => write!(f, "bounds: {e}"),
            BuildError::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            BuildError::PlanTooLarge { log10_steps, log10_samples } => write!(
                f,
                "planned budget needs about 10^{log10_steps:.1} steps and 10^{log10_samples:.1} samples; pass an explicit budget"
            ),
            BuildError::SizeBound { params, bound } => {
                write!(f, "network has {params} parameters, above its bound {bound:e}")
            }
        }
    }
}

impl core::error::Error for BuildError {}

impl From<CalcError> for BuildError {
    fn from(e: CalcError) -> Self {
        BuildError::Calc(e)
    }
}

impl From<SimError> for BuildError {
    fn from(e: SimError) -> Self {
        BuildError::Sim(e)
    }
}

impl From<BoundsError> for BuildError {
    fn from(e: BoundsError) -> Self {
        BuildError::Bounds(e)
    }
}

/// `|g1(x)| <= big_c + c |x|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearGrowth {
    pub big_c: f64,
    pub c: f64,
}

/// `|g0(x) - g0(y)| <= frak_c (1 + |x|^alpha + |y|^alpha) |x - y|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalLipschitz {
    pub frak_c: f64,
    pub alpha: f64,
}

/// A Kolmogorov problem `du/dt = grad(u) g1 + sum a_ij d_ij u`, `u(0) = g0`,
/// with network coefficients and the space box `[lo, hi]^d` of its error
/// measure.
#[derive(Clone, Debug, PartialEq)]
pub struct PdeProblem {
    pub drift: Network,
    pub init: Network,
    pub generator: Matrix,
    pub horizon: f64,
    pub params: RegularityParams,
    pub box_lo: f64,
    pub box_hi: f64,
    pub drift_growth: LinearGrowth,
    pub init_lipschitz: LocalLipschitz,
}

impl PdeProblem {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        drift: Network,
        init: Network,
        generator: Matrix,
        params: RegularityParams,
        box_lo: f64,
        box_hi: f64,
        drift_growth: LinearGrowth,
        init_lipschitz: LocalLipschitz,
    ) -> Result<Self, BuildError> {
        let d = drift.in_dim();
        if drift.out_dim() != d || init.in_dim() != d || init.out_dim() != 1 {
            return Err(BuildError::InvalidArgument("drift must map R^d to R^d and init R^d to R"));
        }
        if generator.rows() != d || generator.cols() != d {
            return Err(BuildError::InvalidArgument("generator must be d x d"));
        }
        if !(box_hi > box_lo) {
            return Err(BuildError::InvalidArgument("empty space box"));
        }
        sde_sim::diffusion_from_generator(&generator)?;
        Ok(PdeProblem {
            drift,
            init,
            generator,
            horizon: params.horizon,
            params,
            box_lo,
            box_hi,
            drift_growth,
            init_lipschitz,
        })
    }

    pub fn dim(&self) -> usize {
        self.drift.in_dim()
    }

    /// Diffusion matrix `sqrt(2 A)`.
    pub fn diffusion(&self) -> Matrix {
        sde_sim::diffusion_from_generator(&self.generator).expect("validated at construction")
    }

    /// Uniform probability measure on `[0, T] x [lo, hi]^d`.
    pub fn measure(&self) -> sde_sim::UniformSpaceTimeMeasure {
        sde_sim::UniformSpaceTimeMeasure::new(self.horizon, self.box_lo, self.box_hi, self.dim())
            .expect("validated at construction")
    }

    /// SHA-256 over a canonical little-endian encoding of every field.
    pub fn hash(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        hash_network(&mut h, &self.drift);
        hash_network(&mut h, &self.init);
        hash_matrix(&mut h, &self.generator);
        let p = &self.params;
        for v in [
            p.horizon,
            p.kappa,
            p.eta,
            p.p,
            self.box_lo,
            self.box_hi,
            self.drift_growth.big_c,
            self.drift_growth.c,
            self.init_lipschitz.frak_c,
            self.init_lipschitz.alpha,
        ] {
            h.update(v.to_le_bytes());
        }
        h.finalize().into()
    }

    pub fn hash_hex(&self) -> String {
        to_hex(&self.hash())
    }
}

fn hash_matrix(h: &mut Sha256, m: &Matrix) {
    h.update((m.rows() as u64).to_le_bytes());
    h.update((m.cols() as u64).to_le_bytes());
    h.update((m.nnz() as u64).to_le_bytes());
    for (i, j, v) in m.triplets() {
        h.update((i as u64).to_le_bytes());
        h.update((j as u64).to_le_bytes());
        h.update(v.to_le_bytes());
    }
}

fn hash_network(h: &mut Sha256, net: &Network) {
    h.update((net.length() as u64).to_le_bytes());
    for l in net.layers() {
        hash_matrix(h, l.weight());
        for b in l.bias() {
            h.update(b.to_le_bytes());
        }
    }
}

/// Lowercase hexadecimal encoding.
pub fn to_hex(bytes: &[u8]) -> String {
    hex::encode(bytes)
}

/// An Euler network together with its product sub-network data.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerNet {
    pub net: Network,
    pub product: ProductInfo,
}

/// Network `(t, x) -> Y_t^{x,y}` up to the product error, for the uniform
/// grid `grid`, drift network `drift` and increments `y_1..y_N` stored back
/// to back in `increments`.
pub fn build_euler_net(drift: &Network, increments: &[f64], grid: &TimeGrid, delta: f64) -> Result<EulerNet, BuildError> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(BuildError::InvalidArgument("delta must lie in (0, 1]"));
    }
    let d = drift.in_dim();
    if drift.out_dim() != d {
        return Err(BuildError::InvalidArgument("drift must map R^d to R^d"));
    }
    let n_steps = grid.steps();
    if increments.len() != n_steps * d {
        return Err(BuildError::Sim(SimError::Shape { expected: n_steps * d, got: increments.len() }));
    }
    let (gamma, product) = growth_product_net(delta, PRODUCT_EXPONENT)?;
    let states = euler_states_net(drift, increments, grid)?;
    let prefix = parallel(&[time_tents(grid)?, identity_of_length((n_steps + 1) * d, 3)])?;
    let sum = interpolation_sum(&gamma, n_steps, d)?;
    let net = compose(&sum, &compose(&prefix, &states)?)?;
    Ok(EulerNet { net, product })
}

/// `(t, x) -> (t, Y_0, ..., Y_N)`.
fn euler_states_net(drift: &Network, increments: &[f64], grid: &TimeGrid) -> Result<Network, BuildError> {
    let d = drift.in_dim();
    let h = grid.step_size();
    let drift_len = drift.length();
    let mut g = affine_net(Matrix::identity(d + 1), vec![0.0; d + 1])?;
    for n in 0..grid.steps() {
        let width = 1 + (n + 1) * d;
        let last: Vec<usize> = (width - d..width).collect();
        let select = affine_net(Matrix::selector(width, &last), vec![0.0; d])?;
        let body = parallel_shared(&[identity_of_length(width, drift_len), compose(drift, &select)?])?;
        // (z, F) -> (z, Y_n + h F + y_{n+1})
        let mut rows: Vec<Vec<(usize, f64)>> = (0..width).map(|j| vec![(j, 1.0)]).collect();
        for i in 0..d {
            rows.push(vec![(width - d + i, 1.0), (width + i, h)]);
        }
        let mut bias = vec![0.0; width];
        bias.extend_from_slice(&increments[n * d..(n + 1) * d]);
        let post = affine_net(Matrix::from_rows(width + d, &rows), bias)?;
        g = compose(&compose(&post, &body)?, &g)?;
    }
    Ok(g)
}

/// Hat functions `t -> (phi_0(t), ..., phi_N(t))` of the uniform grid,
/// constant outside `[0, T]`. The output layer has no bias, so a vanishing
/// `phi_k` is an exact zero after fusion with later layers.
fn time_tents(grid: &TimeGrid) -> Result<Network, BuildError> {
    let n = grid.steps();
    let s = n as f64 / grid.horizon();
    // u_j = relu(s t - j)
    let first = Layer::new(Matrix::from_dense(n, 1, &vec![s; n]), (0..n).map(|j| -(j as f64)).collect())?;
    // r_j = relu(1 - u_j), then relu(u_{N-1}) and relu(u_{N-1} - 1)
    let mut rows: Vec<Vec<(usize, f64)>> = (0..n).map(|j| vec![(j, -1.0)]).collect();
    rows.push(vec![(n - 1, 1.0)]);
    rows.push(vec![(n - 1, 1.0)]);
    let mut bias = vec![1.0; n];
    bias.extend_from_slice(&[0.0, -1.0]);
    let second = Layer::new(Matrix::from_rows(n, &rows), bias)?;
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::with_capacity(n + 1);
    rows.push(vec![(0, 1.0)]);
    for k in 1..n {
        rows.push(vec![(k - 1, -1.0), (k, 1.0)]);
    }
    rows.push(vec![(n, 1.0), (n + 1, -1.0)]);
    let third = Layer::new(Matrix::from_rows(n + 2, &rows), vec![0.0; n + 1])?;
    Ok(Network::new(vec![first, second, third])?)
}

/// `(phi_0..phi_N, Y_0..Y_N) -> sum_k Gamma(phi_k, Y_k)` componentwise.
fn interpolation_sum(gamma: &Network, n_steps: usize, d: usize) -> Result<Network, BuildError> {
    let width = (n_steps + 1) * (d + 1);
    let mut blocks = Vec::with_capacity((n_steps + 1) * d);
    for k in 0..=n_steps {
        for i in 0..d {
            let pick = affine_net(Matrix::selector(width, &[k, n_steps + 1 + k * d + i]), vec![0.0; 2])?;
            blocks.push(compose(gamma, &pick)?);
        }
    }
    let products = parallel_shared(&blocks)?;
    let m = (n_steps + 1) * d;
    let rows: Vec<Vec<(usize, f64)>> = (0..d).map(|i| (0..=n_steps).map(|k| (k * d + i, 1.0)).collect()).collect();
    let sum = affine_net(Matrix::from_rows(m, &rows), vec![0.0; d])?;
    // materialize every product as a hidden unit so that zero products are
    // added as exact zeros
    Ok(compose(&sum, &compose(&identity_net(m), &products)?)?)
}

/// Size and accuracy data recorded with a built network.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundValues {
    pub param_count: u64,
    pub param_bound: f64,
    /// Error bound against the exact solution in `L^p` of the problem's
    /// uniform probability measure.
    pub error_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub problem_hash: [u8; 32],
    pub seed: u64,
    pub budget: Budget,
    pub bounds: BoundValues,
}

/// A built network on `R^(d+1)` with the data it was built from.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionNet {
    pub net: Network,
    pub provenance: Provenance,
}

/// Averages `g0 ∘ Psi_{y_m}` over the paths of `noise` with weights `1/M`.
pub fn build_mc_average_net(problem: &PdeProblem, budget: &Budget, noise: &BrownianGrid) -> Result<Network, BuildError> {
    if noise.paths() != budget.samples || noise.grid().steps() != budget.steps || noise.dim() != problem.dim() {
        return Err(BuildError::InvalidArgument("noise does not match budget and problem"));
    }
    if noise.grid().horizon() != problem.horizon {
        return Err(BuildError::InvalidArgument("noise horizon differs from the problem horizon"));
    }
    let mut nets = Vec::with_capacity(budget.samples);
    for m in 0..budget.samples {
        let euler = build_euler_net(&problem.drift, noise.path(m), noise.grid(), budget.delta)?;
        nets.push(compose(&problem.init, &euler.net)?);
    }
    let w = 1.0 / budget.samples as f64;
    Ok(average_nets(&nets, &vec![w; budget.samples])?)
}

/// Samples the noise for `budget` from `seed`.
pub fn sample_noise(problem: &PdeProblem, budget: &Budget, seed: u64) -> Result<BrownianGrid, BuildError> {
    Ok(sde_sim::sample_brownian(seed, budget.steps, budget.samples, problem.horizon, &problem.diffusion())?)
}

/// Planned budget for accuracy `eps`, if its work `N * M` is at most
/// [`PLANNED_WORK_CAP`].
pub fn planned_budget(problem: &PdeProblem, eps: f64) -> Result<Budget, BuildError> {
    let plan = bounds::plan_budget(&problem.params, problem.dim(), eps)?;
    match plan.budget() {
        Some(b) if (b.steps as f64) * (b.samples as f64) <= PLANNED_WORK_CAP => Ok(b),
        _ => Err(BuildError::PlanTooLarge { log10_steps: plan.steps.log10(), log10_samples: plan.samples.log10() }),
    }
}

/// Builds the solution network for `budget` (or for the planned budget at
/// accuracy `eps` when none is given) and records its provenance.
pub fn solve(problem: &PdeProblem, eps: f64, seed: u64, budget_override: Option<Budget>) -> Result<SolutionNet, BuildError> {
    let budget = match budget_override {
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

/// Direct Monte Carlo Euler average `(1/M) sum_m g0(Y_t^{m,x})` evaluated
/// with the problem's networks.
pub fn mc_euler_average(problem: &PdeProblem, noise: &BrownianGrid, t: f64, x: &[f64]) -> Result<f64, BuildError> {
    let mut vals = Vec::with_capacity(noise.paths());
    for m in 0..noise.paths() {
        let state = sde_sim::euler_grid(x, &problem.drift, noise.grid(), noise.path(m))?;
        let y = state.interpolate(t)?;
        vals.push(problem.init.realize_scalar(&y)?);
    }
    Ok(crate::stats::pairwise_sum(&vals) / noise.paths() as f64)
}

/// Envelopes `g_0..g_N` of one noise path at `x` for a drift with linear
/// growth `growth`.
pub fn path_envelope(growth: &LinearGrowth, grid: &TimeGrid, x: &[f64], increments: &[f64]) -> Vec<f64> {
    bounds::growth_envelope(norm(x), growth.big_c, growth.c, grid.horizon(), x.len(), increments)
}

/// `max_n |W_n|` over the partial sums of one path's increments.
pub fn max_partial_sum_norm(dim: usize, increments: &[f64]) -> f64 {
    let mut sum = vec![0.0; dim];
    let mut best = 0.0f64;
    for step in increments.chunks(dim) {
        for (s, v) in sum.iter_mut().zip(step) {
            *s += v;
        }
        best = best.max(norm(&sum));
    }
    best
}

/// Deviation bound between the averaged network and the direct Monte Carlo
/// Euler average at `x`.
pub fn mc_sum_bound_at(problem: &PdeProblem, noise: &BrownianGrid, delta: f64, x: &[f64]) -> f64 {
    let xn = norm(x);
    let g = &problem.drift_growth;
    let t = problem.horizon;
    let mut h2 = Vec::with_capacity(noise.paths());
    let mut hq = Vec::with_capacity(noise.paths());
    for m in 0..noise.paths() {
        let w = max_partial_sum_norm(noise.dim(), noise.path(m));
        h2.push(bounds::mc_sum_aux(xn, g.big_c, g.c, t, w, 2.0));
        hq.push(bounds::mc_sum_aux(xn, g.big_c, g.c, t, w, PRODUCT_EXPONENT));
    }
    let l = &problem.init_lipschitz;
    bounds::mc_sum_error_bound(delta, problem.dim(), l.alpha, l.frak_c, &h2, &hq)
}

/// Index `n` with `t ∈ [tau_n, tau_{n+1}]` (the last interval for `t = T`).
pub fn step_index(grid: &TimeGrid, t: f64) -> usize {
    let s = t * grid.steps() as f64 / grid.horizon();
    (crate::math::floor(s).max(0.0) as usize).min(grid.steps() - 1)
}
