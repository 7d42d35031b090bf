//! Additive-noise SDEs `dX = mu(X) dt + B dW`: Brownian increments, Euler
//! schemes with piecewise-linear interpolation, a Feynman-Kac Monte Carlo
//! oracle and Monte Carlo `L^p` distances over a uniform space-time measure.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::ann_calculus::{Matrix, Network};
use crate::math::{powf, round, sqrt};
use crate::rng::{tag, CounterRng};
use crate::stats::Estimate;

#[derive(Clone, Debug, PartialEq)]
pub enum SimError {
    InvalidArgument(&'static str),
    /// The diffusion matrix is not symmetric positive semidefinite.
    NotPsd,
    /// Evaluation time outside `[0, T]` or off the required grid.
    TimeOutOfRange,
    Shape { expected: usize, got: usize },
}

impl fmt::Display for SimError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimError::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            SimError::NotPsd => f.write_str("matrix is not symmetric positive semidefinite"),
            SimError::TimeOutOfRange => f.write_str("time outside the simulation grid"),
            SimError::Shape { expected, got } => write!(f, "expected length {expected}, got {got}"),
        }
    }
}

impl core::error::Error for SimError {}

/// A map `R^d -> R^d` used as drift.
pub trait VectorField {
    fn dim(&self) -> usize;
    fn eval(&self, x: &[f64], out: &mut [f64]);
}

impl VectorField for Network {
    fn dim(&self) -> usize {
        self.in_dim()
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        let y = self.realize(x).expect("drift network dimension");
        out.copy_from_slice(&y);
    }
}

/// Closure-backed vector field.
pub struct FnField<F> {
    dim: usize,
    f: F,
}

impl<F: Fn(&[f64], &mut [f64])> FnField<F> {
    pub fn new(dim: usize, f: F) -> Self {
        FnField { dim, f }
    }
}

impl<F: Fn(&[f64], &mut [f64])> VectorField for FnField<F> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }
}

/// The zero drift on `R^d`.
pub struct ZeroField(pub usize);

impl VectorField for ZeroField {
    fn dim(&self) -> usize {
        self.0
    }

    fn eval(&self, _x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
    }
}

/// Uniform grid `tau_n = n T / N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    horizon: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn uniform(horizon: f64, steps: usize) -> Result<Self, SimError> {
        if !(horizon > 0.0 && horizon.is_finite()) || steps == 0 {
            return Err(SimError::InvalidArgument("grid needs T > 0 and N >= 1"));
        }
        Ok(TimeGrid { horizon, steps })
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn step_size(&self) -> f64 {
        self.horizon / self.steps as f64
    }

    pub fn tau(&self, n: usize) -> f64 {
        if n == self.steps {
            return self.horizon;
        }
        n as f64 * self.horizon / self.steps as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|n| self.tau(n)).collect()
    }
}

/// Increments `B (W_{tau_{n+1}} - W_{tau_n})` for a set of paths, stored
/// path-major then step-major.
#[derive(Clone, Debug, PartialEq)]
pub struct BrownianGrid {
    grid: TimeGrid,
    paths: usize,
    dim: usize,
    seed: u64,
    increments: Vec<f64>,
}

/// Increments of one path; step `n` draws its normals from the stream
/// `(seed, path, n, BROWNIAN)`.
pub fn path_increments(seed: u64, path: u64, grid: &TimeGrid, b: &Matrix) -> Vec<f64> {
    let (d, k) = (b.rows(), b.cols());
    let sh = sqrt(grid.step_size());
    let mut out = vec![0.0; grid.steps() * d];
    let mut xi = vec![0.0; k];
    for n in 0..grid.steps() {
        let mut rng = CounterRng::new(seed, path, n as u64, tag::BROWNIAN);
        for z in xi.iter_mut() {
            *z = sh * rng.normal();
        }
        b.mul_vec_into(&xi, &mut out[n * d..(n + 1) * d]);
    }
    out
}

/// Samples `paths` independent paths of `B W` on the uniform grid.
pub fn sample_brownian(
    seed: u64,
    steps: usize,
    paths: usize,
    horizon: f64,
    b: &Matrix,
) -> Result<BrownianGrid, SimError> {
    let grid = TimeGrid::uniform(horizon, steps)?;
    if paths == 0 || b.rows() == 0 || b.cols() == 0 {
        return Err(SimError::InvalidArgument("need at least one path and a nonempty B"));
    }
    let mut increments = Vec::with_capacity(paths * steps * b.rows());
    for m in 0..paths {
        increments.extend(path_increments(seed, m as u64, &grid, b));
    }
    Ok(BrownianGrid { grid, paths, dim: b.rows(), seed, increments })
}

impl BrownianGrid {
    /// Assembles a grid from precomputed per-path increments.
    pub fn from_paths(seed: u64, grid: TimeGrid, dim: usize, paths: Vec<Vec<f64>>) -> Result<Self, SimError> {
        let per = grid.steps() * dim;
        if paths.is_empty() {
            return Err(SimError::InvalidArgument("need at least one path"));
        }
        let mut increments = Vec::with_capacity(per * paths.len());
        for p in &paths {
            if p.len() != per {
                return Err(SimError::Shape { expected: per, got: p.len() });
            }
            increments.extend_from_slice(p);
        }
        Ok(BrownianGrid { grid, paths: paths.len(), dim, seed, increments })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn paths(&self) -> usize {
        self.paths
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// All increments of path `m`, `steps * dim` values.
    pub fn path(&self, m: usize) -> &[f64] {
        let per = self.grid.steps() * self.dim;
        &self.increments[m * per..(m + 1) * per]
    }

    /// Increment of path `m` over step `n`.
    pub fn increment(&self, m: usize, n: usize) -> &[f64] {
        let p = self.path(m);
        &p[n * self.dim..(n + 1) * self.dim]
    }

    /// Grid with `steps / factor` steps whose increments are block sums.
    pub fn coarsen(&self, factor: usize) -> Result<BrownianGrid, SimError> {
        if factor == 0 || self.grid.steps() % factor != 0 {
            return Err(SimError::InvalidArgument("factor must divide the step count"));
        }
        let grid = TimeGrid::uniform(self.grid.horizon(), self.grid.steps() / factor)?;
        let mut increments = Vec::with_capacity(self.paths * grid.steps() * self.dim);
        for m in 0..self.paths {
            increments.extend(coarsen_path(self.path(m), self.dim, factor));
        }
        Ok(BrownianGrid { grid, paths: self.paths, dim: self.dim, seed: self.seed, increments })
    }
}

/// Block sums of consecutive increments of one path.
pub fn coarsen_path(fine: &[f64], dim: usize, factor: usize) -> Vec<f64> {
    let steps = fine.len() / dim / factor;
    let mut out = vec![0.0; steps * dim];
    for n in 0..steps {
        for j in 0..factor {
            let s = (n * factor + j) * dim;
            for i in 0..dim {
                out[n * dim + i] += fine[s + i];
            }
        }
    }
    out
}

/// Grid values `Y_{tau_0..tau_N}` of the Euler scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeState {
    grid: TimeGrid,
    dim: usize,
    values: Vec<f64>,
}

impl SchemeState {
    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `Y_{tau_n}`.
    pub fn value(&self, n: usize) -> &[f64] {
        &self.values[n * self.dim..(n + 1) * self.dim]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Y_t = (1 - rho) Y_{tau_n} + rho Y_{tau_{n+1}}`, `rho = t N / T - n`.
    /// At grid times the grid value is returned unchanged.
    pub fn interpolate(&self, t: f64) -> Result<Vec<f64>, SimError> {
        let (n, rho) = locate(&self.grid, t)?;
        if rho == 0.0 {
            return Ok(self.value(n).to_vec());
        }
        let (a, b) = (self.value(n), self.value(n + 1));
        Ok(a.iter().zip(b).map(|(ya, yb)| ya * (1.0 - rho) + yb * rho).collect())
    }
}

/// Interval index and interpolation weight of `t`; grid times map to
/// weight zero exactly.
fn locate(grid: &TimeGrid, t: f64) -> Result<(usize, f64), SimError> {
    let horizon = grid.horizon();
    if !(0.0..=horizon).contains(&t) {
        return Err(SimError::TimeOutOfRange);
    }
    let steps = grid.steps();
    let s = t * steps as f64 / horizon;
    let k = round(s) as usize;
    if k <= steps && grid.tau(k) == t {
        return Ok(if k == steps { (steps - 1, 1.0) } else { (k, 0.0) });
    }
    let n = (crate::math::floor(s) as usize).min(steps - 1);
    Ok((n, (s - n as f64).clamp(0.0, 1.0)))
}

/// Euler scheme `Y_{n+1} = Y_n + h mu(Y_n) + dW_n` driven by the
/// increments of one path (`steps * dim` values).
pub fn euler_grid(
    x: &[f64],
    drift: &dyn VectorField,
    grid: &TimeGrid,
    increments: &[f64],
) -> Result<SchemeState, SimError> {
    let d = x.len();
    if drift.dim() != d {
        return Err(SimError::Shape { expected: d, got: drift.dim() });
    }
    if increments.len() != grid.steps() * d {
        return Err(SimError::Shape { expected: grid.steps() * d, got: increments.len() });
    }
    let h = grid.step_size();
    let mut values = Vec::with_capacity((grid.steps() + 1) * d);
    values.extend_from_slice(x);
    let mut mu = vec![0.0; d];
    for n in 0..grid.steps() {
        let cur = values[n * d..(n + 1) * d].to_vec();
        drift.eval(&cur, &mut mu);
        for i in 0..d {
            values.push(cur[i] + h * mu[i] + increments[n * d + i]);
        }
    }
    Ok(SchemeState { grid: *grid, dim: d, values })
}

/// Continuous-time scheme `Z_t = Y_{tau_n} + mu(Y_{tau_n}) (t - tau_n) +
/// B (W_t - W_{tau_n})` at a time `t` of a grid refined `refine` times,
/// where `fine` holds the refined increments whose block sums drove `state`.
pub fn continuous_scheme_at(
    state: &SchemeState,
    drift: &dyn VectorField,
    fine: &[f64],
    refine: usize,
    t: f64,
) -> Result<Vec<f64>, SimError> {
    let grid = state.grid();
    let d = state.dim();
    let fine_steps = grid.steps() * refine;
    if refine == 0 || fine.len() != fine_steps * d {
        return Err(SimError::Shape { expected: fine_steps * d, got: fine.len() });
    }
    if !(0.0..=grid.horizon()).contains(&t) {
        return Err(SimError::TimeOutOfRange);
    }
    let j = round(t * fine_steps as f64 / grid.horizon()) as usize;
    let tj = j as f64 * grid.horizon() / fine_steps as f64;
    if (tj - t).abs() > 1e-12 * grid.horizon() {
        return Err(SimError::TimeOutOfRange);
    }
    let n = (j / refine).min(grid.steps() - 1);
    let y = state.value(n);
    let mut mu = vec![0.0; d];
    drift.eval(y, &mut mu);
    let dt = t - grid.tau(n);
    let mut z: Vec<f64> = y.iter().zip(&mu).map(|(a, m)| a + m * dt).collect();
    for s in n * refine..j {
        for i in 0..d {
            z[i] += fine[s * d + i];
        }
    }
    Ok(z)
}

/// Symmetric square root `sqrt(2 A)` by eigendecomposition; eigenvalues
/// below `1e-12 * trace` are clamped to zero.
pub fn diffusion_from_generator(a: &Matrix) -> Result<Matrix, SimError> {
    let d = a.rows();
    if a.cols() != d || d == 0 {
        return Err(SimError::NotPsd);
    }
    let dense = a.to_dense();
    let scale = dense.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
    for i in 0..d {
        for j in 0..i {
            if (dense[i * d + j] - dense[j * d + i]).abs() > 1e-12 * scale {
                return Err(SimError::NotPsd);
            }
        }
    }
    let m = DMatrix::from_row_slice(d, d, &dense) * 2.0;
    let trace: f64 = (0..d).map(|i| m[(i, i)]).sum();
    let tol = 1e-12 * trace.abs().max(f64::MIN_POSITIVE);
    let eig = SymmetricEigen::new(m);
    let mut lam = eig.eigenvalues.clone();
    for v in lam.iter_mut() {
        if *v < -tol.max(1e-12 * scale) {
            return Err(SimError::NotPsd);
        }
        *v = if *v < tol { 0.0 } else { sqrt(*v) };
    }
    let q = &eig.eigenvectors;
    let root = q * DMatrix::from_diagonal(&lam) * q.transpose();
    let mut data = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            data.push(root[(i, j)]);
        }
    }
    Ok(Matrix::from_dense(d, d, &data))
}

/// One Feynman-Kac sample `f0(X_t)` along path `m`, with `X` simulated by
/// the Euler scheme with `steps` steps on `[0, t]`.
#[allow(clippy::too_many_arguments)]
pub fn feynman_kac_sample(
    f0: &dyn Fn(&[f64]) -> f64,
    drift: &dyn VectorField,
    b: &Matrix,
    t: f64,
    x: &[f64],
    steps: usize,
    seed: u64,
    m: u64,
) -> Result<f64, SimError> {
    if t == 0.0 {
        return Ok(f0(x));
    }
    let grid = TimeGrid::uniform(t, steps)?;
    let inc = path_increments(seed, m, &grid, b);
    let state = euler_grid(x, drift, &grid, &inc)?;
    Ok(f0(state.value(steps)))
}

/// Monte Carlo estimate of `E[f0(X_t^x)]` for `dX = mu(X) dt + sqrt(2A) dW`.
#[allow(clippy::too_many_arguments)]
pub fn feynman_kac(
    f0: &dyn Fn(&[f64]) -> f64,
    drift: &dyn VectorField,
    a: &Matrix,
    t: f64,
    x: &[f64],
    paths: usize,
    steps: usize,
    seed: u64,
) -> Result<Estimate, SimError> {
    if paths == 0 || steps == 0 || t < 0.0 {
        return Err(SimError::InvalidArgument("need paths >= 1, steps >= 1 and t >= 0"));
    }
    if a.rows() != x.len() {
        return Err(SimError::Shape { expected: x.len(), got: a.rows() });
    }
    let b = diffusion_from_generator(a)?;
    let mut samples = Vec::with_capacity(paths);
    for m in 0..paths {
        samples.push(feynman_kac_sample(f0, drift, &b, t, x, steps, seed, m as u64)?);
    }
    Ok(Estimate::from_samples(&samples))
}

/// Uniform probability measure on `[0, T] x [lo, hi]^d`.
///
/// The measure has total mass one. The Lebesgue measure on the same box
/// divided by `(hi - lo)^d` has mass `T`; its `L^p` norms are `T^(1/p)`
/// times the ones computed here.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformSpaceTimeMeasure {
    pub horizon: f64,
    pub lo: f64,
    pub hi: f64,
    pub dim: usize,
}

impl UniformSpaceTimeMeasure {
    pub fn new(horizon: f64, lo: f64, hi: f64, dim: usize) -> Result<Self, SimError> {
        if !(horizon > 0.0) || !(hi > lo) || dim == 0 {
            return Err(SimError::InvalidArgument("need T > 0, hi > lo and d >= 1"));
        }
        Ok(UniformSpaceTimeMeasure { horizon, lo, hi, dim })
    }

    pub fn mass(&self) -> f64 {
        1.0
    }

    /// The `k`-th sample point `(t, x)` of the stream keyed by `seed`.
    pub fn sample(&self, seed: u64, k: u64) -> (f64, Vec<f64>) {
        let mut rng = CounterRng::new(seed, k, 0, tag::MEASURE);
        let t = self.horizon * rng.uniform();
        let x = (0..self.dim).map(|_| self.lo + (self.hi - self.lo) * rng.uniform()).collect();
        (t, x)
    }
}

/// `|diff|^p`, the per-sample term of [`lp_error`].
pub fn lp_term(diff: f64, p: f64) -> f64 {
    powf(diff.abs(), p)
}

/// Monte Carlo estimate of `(∫ |a - b|^p dnu)^(1/p)` from `samples` points.
pub fn lp_error(
    fn_a: &dyn Fn(f64, &[f64]) -> f64,
    fn_b: &dyn Fn(f64, &[f64]) -> f64,
    measure: &UniformSpaceTimeMeasure,
    p: f64,
    samples: usize,
    seed: u64,
) -> Result<Estimate, SimError> {
    if !(p > 0.0) {
        return Err(SimError::InvalidArgument("p must be positive"));
    }
    if samples == 0 {
        return Err(SimError::InvalidArgument("need at least one sample"));
    }
    let mut vals = Vec::with_capacity(samples);
    for k in 0..samples {
        let (t, x) = measure.sample(seed, k as u64);
        vals.push(lp_term(fn_a(t, &x) - fn_b(t, &x), p));
    }
    Ok(Estimate::from_samples(&vals).root(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_basics() {
        let g = TimeGrid::uniform(1.0, 8).unwrap();
        assert_eq!(g.tau(3), 0.375);
        assert_eq!(g.step_size(), 0.125);
        assert!(TimeGrid::uniform(0.0, 3).is_err());
        assert!(TimeGrid::uniform(1.0, 0).is_err());
    }

    #[test]
    fn interpolate_rejects_outside() {
        let g = TimeGrid::uniform(1.0, 2).unwrap();
        let s = euler_grid(&[0.0], &ZeroField(1), &g, &[1.0, 2.0]).unwrap();
        assert_eq!(s.interpolate(1.5), Err(SimError::TimeOutOfRange));
        assert_eq!(s.interpolate(-0.1), Err(SimError::TimeOutOfRange));
        assert_eq!(s.interpolate(1.0).unwrap(), vec![3.0]);
        assert_eq!(s.interpolate(0.25).unwrap(), vec![0.5]);
    }

    #[test]
    fn not_psd_is_rejected() {
        let a = Matrix::from_dense(2, 2, &[1.0, 0.0, 0.0, -1.0]);
        assert_eq!(diffusion_from_generator(&a), Err(SimError::NotPsd));
        let a = Matrix::from_dense(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert_eq!(diffusion_from_generator(&a), Err(SimError::NotPsd));
    }

    #[test]
    fn sqrt_of_diagonal_generator() {
        let a = Matrix::from_dense(2, 2, &[2.0, 0.0, 0.0, 0.5]);
        let b = diffusion_from_generator(&a).unwrap();
        assert!((b.get(0, 0) - 2.0).abs() < 1e-14);
        assert!((b.get(1, 1) - 1.0).abs() < 1e-14);
        assert!(b.get(0, 1).abs() < 1e-14);
    }

    #[test]
    fn lp_rejects_nonpositive_p() {
        let m = UniformSpaceTimeMeasure::new(1.0, 0.0, 1.0, 1).unwrap();
        let z = |_: f64, _: &[f64]| 0.0;
        assert!(lp_error(&z, &z, &m, 0.0, 10, 1).is_err());
    }
}
