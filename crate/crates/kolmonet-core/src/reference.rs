//! Test problems with closed-form solutions and exact (or accuracy
//! controlled) ReLU coefficient networks.
//!
//! All problems use `T = 1`, `p = 2` and the space box `[-1, 1]^d`. Their
//! `kappa` and `eta` are the smallest values meeting the regularity and
//! moment hypotheses at the given dimension, including
//! `P(network) <= kappa d^kappa` for every coefficient network.

use alloc::vec;
use alloc::vec::Vec;

use crate::ann_calculus::{affine_net, compose, parallel_shared, square_net, Layer, Matrix, Network};
use crate::bounds::RegularityParams;
use crate::builder::{LinearGrowth, LocalLipschitz, PdeProblem};
use crate::math::{exp, ln, powf, sqrt};

pub const HORIZON: f64 = 1.0;
pub const P: f64 = 2.0;
pub const BOX: (f64, f64) = (-1.0, 1.0);
/// Diagonal of the generator of the linear problem, `A = a I`.
pub const OU_GENERATOR: f64 = 0.5;
/// Target accuracy of the quadratic initial value on its range.
pub const QUADRATIC_EPS0: f64 = 1e-3;

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 3] = ["heat_relu", "ou_linear", "quadratic_heat"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    /// Heat equation `u_t = Δu` with `u(0, x) = sum_i max(x_i, 0)`.
    HeatRelu,
    /// `u_t = -x · grad u + a Δu` with `u(0, x) = sum_i x_i`.
    OuLinear,
    /// Heat equation with `u(0, x) = |x|^2`, represented approximately.
    QuadraticHeat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestProblem {
    pub name: &'static str,
    pub kind: ProblemKind,
    pub problem: PdeProblem,
    /// `sup |u(0, x) - R(init)(x)|` on the range where it is certified.
    pub init_error: f64,
    /// Half-width of the cube on which `init_error` holds.
    pub init_range: f64,
    pub notes: &'static str,
}

impl TestProblem {
    /// Exact solution `u(t, x)` of the problem with the exact initial value.
    pub fn exact(&self, t: f64, x: &[f64]) -> f64 {
        match self.kind {
            ProblemKind::HeatRelu => heat_relu_exact(t, x),
            ProblemKind::OuLinear => exp(-t) * x.iter().sum::<f64>(),
            ProblemKind::QuadraticHeat => x.iter().map(|v| v * v).sum::<f64>() + 2.0 * x.len() as f64 * t,
        }
    }

    /// Exact initial value `u(0, x)`.
    pub fn exact_init(&self, x: &[f64]) -> f64 {
        self.exact(0.0, x)
    }
}

/// Problem registry by name.
pub fn by_name(name: &str, d: usize) -> Option<TestProblem> {
    match name {
        "heat_relu" => Some(heat_relu_problem(d)),
        "ou_linear" => Some(ou_linear_problem(d)),
        "quadratic_heat" => Some(quadratic_heat_problem(d, 1.0)),
        _ => None,
    }
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    exp(-0.5 * z * z) / sqrt(2.0 * core::f64::consts::PI)
}

/// Standard normal distribution function.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / core::f64::consts::SQRT_2)
}

/// `sum_i [x_i Phi(x_i / s) + s phi(x_i / s)]` with `s = sqrt(2 t)`.
pub fn heat_relu_exact(t: f64, x: &[f64]) -> f64 {
    if t <= 0.0 {
        return x.iter().map(|&v| v.max(0.0)).sum();
    }
    let s = sqrt(2.0 * t);
    x.iter().map(|&v| v * normal_cdf(v / s) + s * normal_pdf(v / s)).sum()
}

/// Smallest `k >= lower` with `k d^k >= rhs`.
pub fn minimal_kappa(d: usize, rhs: f64, lower: f64) -> f64 {
    let ld = ln(d as f64);
    let f = |k: f64| ln(k) + k * ld;
    let target = ln(rhs);
    if f(lower) >= target {
        return lower;
    }
    let mut hi = lower.max(1.0);
    while f(hi) < target {
        hi *= 2.0;
    }
    let mut lo = lower;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    hi
}

/// Smallest `eta >= 1` with `eta d^eta >= max(1, (sqrt(d) m)^(2 max(2 kappa, 3)))`
/// where `m = max(|lo|, |hi|)`: the moment hypothesis for the uniform
/// probability measure on `[0, T] x [lo, hi]^d`.
pub fn minimal_eta(d: usize, kappa: f64, lo: f64, hi: f64) -> f64 {
    let m = lo.abs().max(hi.abs());
    let r = 2.0 * (2.0 * kappa).max(3.0);
    let rhs = powf(sqrt(d as f64) * m, r).max(1.0);
    minimal_kappa(d, rhs, 1.0)
}

fn params_for(d: usize, kappa: f64) -> RegularityParams {
    let eta = minimal_eta(d, kappa, BOX.0, BOX.1);
    RegularityParams::new(HORIZON, kappa, eta, P).expect("valid reference parameters")
}

fn zero_drift(d: usize) -> Network {
    affine_net(Matrix::zeros(d, d), vec![0.0; d]).expect("shape")
}

fn sum_net(d: usize) -> Network {
    affine_net(Matrix::from_dense(1, d, &vec![1.0; d]), vec![0.0]).expect("shape")
}

/// `x -> sum_i max(x_i, 0)` with dims `(d, d, 1)`.
pub fn relu_sum_net(d: usize) -> Network {
    let first = Layer::new(Matrix::identity(d), vec![0.0; d]).expect("shape");
    let second = Layer::new(Matrix::from_dense(1, d, &vec![1.0; d]), vec![0.0]).expect("shape");
    Network::new(vec![first, second]).expect("shape")
}

/// Heat equation with drift 0, `A = I` and initial value `sum_i max(x_i, 0)`.
pub fn heat_relu_problem(d: usize) -> TestProblem {
    assert!(d >= 1);
    let drift = zero_drift(d);
    let init = relu_sum_net(d);
    let pmax = drift.param_count().max(init.param_count()) as f64;
    // growth |g0(x)| + tr A <= sqrt(d)|x| + d needs kappa >= 1
    let kappa = minimal_kappa(d, pmax, 1.0);
    let problem = PdeProblem::new(
        drift,
        init,
        Matrix::identity(d),
        params_for(d, kappa),
        BOX.0,
        BOX.1,
        LinearGrowth { big_c: 0.0, c: 0.0 },
        // |g0(x) - g0(y)| <= sqrt(d)|x - y| = (sqrt(d)/3)(1 + 1 + 1)|x - y|
        LocalLipschitz { frak_c: sqrt(d as f64) / 3.0, alpha: 0.0 },
    )
    .expect("valid problem");
    TestProblem {
        name: "heat_relu",
        kind: ProblemKind::HeatRelu,
        problem,
        init_error: 0.0,
        init_range: f64::INFINITY,
        notes: "exact coefficients; u from the Gaussian convolution of max(x, 0)",
    }
}

/// Ornstein-Uhlenbeck drift `-x`, `A = a I`, initial value `sum_i x_i`.
pub fn ou_linear_problem(d: usize) -> TestProblem {
    assert!(d >= 1);
    let drift = affine_net(Matrix::identity(d).scaled(-1.0), vec![0.0; d]).expect("shape");
    let init = sum_net(d);
    let pmax = drift.param_count().max(init.param_count()) as f64;
    // Lipschitz constant 1 and growth |x| of the drift need kappa >= 1
    let kappa = minimal_kappa(d, pmax, 1.0);
    let problem = PdeProblem::new(
        drift,
        init,
        Matrix::identity(d).scaled(OU_GENERATOR),
        params_for(d, kappa),
        BOX.0,
        BOX.1,
        LinearGrowth { big_c: 0.0, c: 1.0 },
        LocalLipschitz { frak_c: sqrt(d as f64) / 3.0, alpha: 0.0 },
    )
    .expect("valid problem");
    TestProblem {
        name: "ou_linear",
        kind: ProblemKind::OuLinear,
        problem,
        init_error: 0.0,
        init_range: f64::INFINITY,
        notes: "linear functional of an OU process; the diffusion does not enter the mean",
    }
}

/// Heat equation with initial value `|x|^2`, represented by per-coordinate
/// square networks clipped at `r`; accurate within `init_error` on `[-r, r]^d`.
pub fn quadratic_heat_problem(d: usize, r: f64) -> TestProblem {
    assert!(d >= 1 && r >= 1.0);
    let df = d as f64;
    let mut stages = 0u32;
    while df * r * r * powf(2.0, -2.0 * stages as f64 - 2.0) > QUADRATIC_EPS0 {
        stages += 1;
    }
    let eps0 = df * r * r * powf(2.0, -2.0 * stages as f64 - 2.0);
    let sq = square_net(stages, r);
    let coords: Vec<Network> = (0..d)
        .map(|i| {
            let pick = affine_net(Matrix::selector(d, &[i]), vec![0.0]).expect("shape");
            compose(&sq, &pick).expect("shape")
        })
        .collect();
    let init = compose(&sum_net(d), &parallel_shared(&coords).expect("shape")).expect("shape");
    let drift = zero_drift(d);
    let pmax = drift.param_count().max(init.param_count()) as f64;
    // quadratic growth needs kappa >= 2; the Lipschitz estimate
    // (h sqrt(d) + 2|x| + 2|y|)|x - y| with h <= 1 needs kappa d^kappa >= 2 + sqrt(d)
    let kappa = minimal_kappa(d, pmax.max(2.0 + sqrt(df)), 2.0);
    let h = r * powf(2.0, -(stages as f64));
    let problem = PdeProblem::new(
        drift,
        init,
        Matrix::identity(d),
        params_for(d, kappa),
        BOX.0,
        BOX.1,
        LinearGrowth { big_c: 0.0, c: 0.0 },
        LocalLipschitz { frak_c: (h * sqrt(df)).max(2.0), alpha: 1.0 },
    )
    .expect("valid problem");
    TestProblem {
        name: "quadratic_heat",
        kind: ProblemKind::QuadraticHeat,
        problem,
        init_error: eps0,
        init_range: r,
        notes: "initial value approximated from above by sawtooth square networks",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.959963984540054) - 0.975).abs() < 1e-15);
        assert!((normal_cdf(-8.0) - 6.22096057427178e-16).abs() < 1e-28);
    }

    #[test]
    fn kappa_solver() {
        assert_eq!(minimal_kappa(1, 4.0, 1.0), 4.0);
        assert_eq!(minimal_kappa(3, 2.0, 1.0), 1.0);
        let k = minimal_kappa(2, 9.0, 1.0);
        assert!((k * powf(2.0, k) - 9.0).abs() < 1e-9);
    }

    #[test]
    fn registry_names() {
        for n in NAMES {
            assert_eq!(by_name(n, 2).unwrap().name, n);
        }
        assert!(by_name("nope", 1).is_none());
    }
}
