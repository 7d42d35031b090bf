use kolmonet_core::bounds::{self, BoundsError, Magnitude, RegularityParams, WeakErrorParams};
use kolmonet_core::reference::{heat_relu_exact, heat_relu_problem};
use kolmonet_core::sde_sim::{euler_grid, FnField, TimeGrid};
use kolmonet_core::stats::Estimate;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

fn params(kappa: f64, eta: f64) -> RegularityParams {
    RegularityParams::new(1.0, kappa, eta, 2.0).unwrap()
}

struct Normals(ChaCha8Rng);

impl Normals {
    fn new(seed: u64) -> Self {
        Normals(ChaCha8Rng::seed_from_u64(seed))
    }

    // Box-Muller, one value per call
    fn next(&mut self) -> f64 {
        let u: f64 = 1.0 - self.0.random::<f64>();
        let v: f64 = self.0.random();
        (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.random_range(lo..hi)
    }
}

#[test]
fn gaussian_moment_examples() {
    assert_eq!(bounds::gaussian_moment_bound(2.0, 4.0), 2.0);
    assert_eq!(bounds::gaussian_moment_bound(1.0, 9.0), 3.0);
}

#[test]
fn gaussian_moment_dominates_samples() {
    let mut g = Normals::new(3);
    let n = 1_000_000;
    let vals: Vec<f64> = (0..n)
        .map(|_| {
            let (a, b) = (g.next(), g.next());
            (a * a + b * b).powi(2)
        })
        .collect();
    let est = Estimate::from_samples(&vals).root(4.0);
    // E|X|^4 = 8 for X ~ N(0, I_2)
    assert!((est.mean - 8f64.powf(0.25)).abs() <= 4.0 * est.std_error);
    assert!(est.mean - 3.0 * est.std_error <= bounds::gaussian_moment_bound(4.0, 2.0));
}

#[test]
fn apriori_examples() {
    assert_eq!(bounds::apriori_sde_bound(1.7, 0.0, 0.0, 3.0, 0.0), 1.7);
    assert!(close(bounds::apriori_sde_bound(1.0, 1.0, 1.0, 1.0, 0.0), 2.0 * std::f64::consts::E, 1e-15));
}

#[test]
fn apriori_dominates_euler_paths() {
    let drift = FnField::new(2, |x: &[f64], out: &mut [f64]| {
        out[0] = -x[0] + 0.5;
        out[1] = -x[1] - 0.5;
    });
    // |mu(x)| <= 1/sqrt(2) + |x|
    let big_c = 0.5f64.sqrt();
    let mut g = Normals::new(4);
    for steps in [4, 16, 64] {
        let grid = TimeGrid::uniform(1.0, steps).unwrap();
        let h = grid.step_size();
        for _ in 0..200 {
            let x = [g.uniform(-2.0, 2.0), g.uniform(-2.0, 2.0)];
            let inc: Vec<f64> = (0..2 * steps).map(|_| h.sqrt() * g.next()).collect();
            let mut sum = [0.0; 2];
            let mut beta = 0.0f64;
            for n in 0..steps {
                sum[0] += inc[2 * n];
                sum[1] += inc[2 * n + 1];
                beta = beta.max(sum[0].hypot(sum[1]));
            }
            let y = euler_grid(&x, &drift, &grid, &inc).unwrap();
            let bound = bounds::apriori_sde_bound(x[0].hypot(x[1]), big_c, 1.0, 1.0, beta);
            for n in 0..=steps {
                let v = y.value(n);
                assert!(v[0].hypot(v[1]) <= bound * (1.0 + 1e-12));
            }
        }
    }
}

#[test]
fn varpi_examples() {
    assert_eq!(bounds::varpi(5.0, 0.0), 1.0);
    assert_eq!(bounds::varpi(2.0, 4.0), 2.0);
    let mut prev = 0.0;
    for i in 0..50 {
        let q = 2.0 + 0.25 * i as f64;
        let v = bounds::varpi(q, 0.7);
        assert!(v >= prev);
        prev = v;
    }
}

fn weak_params(eps0: f64, eps1: f64, eps2: f64) -> WeakErrorParams {
    WeakErrorParams {
        horizon: 1.0,
        l0: 1.0,
        l1: 1.0,
        ell: 0.0,
        sigma0: 0.0,
        sigma1: 0.0,
        sigma2: 0.0,
        eps0,
        eps1,
        eps2,
        c: 1.0,
        big_c: eps1,
        p: 2.0,
        q: 2.0,
        trace_bstar_b: 1.0,
    }
}

#[test]
fn weak_error_vanishes_without_sources() {
    assert_eq!(bounds::weak_error_bound(&weak_params(0.0, 0.0, 0.0), 1.3, 0.0, 0.0).unwrap(), 0.0);
}

#[test]
fn weak_error_rejects_non_conjugate_exponents() {
    let mut w = weak_params(0.1, 0.1, 0.1);
    w.p = 3.0;
    assert!(matches!(
        bounds::weak_error_bound(&w, 1.0, 0.0, 0.1),
        Err(BoundsError::NotConjugate { .. })
    ));
    w.p = 3.0;
    w.q = 1.5;
    assert!(bounds::weak_error_bound(&w, 1.0, 0.0, 0.1).is_ok());
    w.p = 1.5;
    w.q = 3.0;
    assert!(bounds::weak_error_bound(&w, 1.0, 0.0, 0.1).is_err());
}

#[test]
fn weak_error_dominates_perturbed_ou() {
    // X: dX = -X dt + dW, f0(x) = x, so E f0(X_T) = x e^{-T}; Y: Euler with drift -y + eps1
    let x = 0.8;
    let mut g = Normals::new(5);
    for (steps, eps1) in [(4usize, 0.0), (4, 0.05), (16, 0.01), (64, 0.2)] {
        let grid = TimeGrid::uniform(1.0, steps).unwrap();
        let h = grid.step_size();
        let drift = FnField::new(1, move |y: &[f64], out: &mut [f64]| out[0] = -y[0] + eps1);
        let finals: Vec<f64> = (0..20_000)
            .map(|_| {
                let inc: Vec<f64> = (0..steps).map(|_| h.sqrt() * g.next()).collect();
                euler_grid(&[x], &drift, &grid, &inc).unwrap().value(steps)[0]
            })
            .collect();
        let est = Estimate::from_samples(&finals);
        let gap = (x * (-1.0f64).exp() - est.mean).abs();
        let bound = bounds::weak_error_bound(&weak_params(0.0, eps1, 0.0), x, 0.0, h).unwrap();
        assert!(gap - 3.0 * est.std_error <= bound, "N={steps}: {gap} > {bound}");
    }
}

#[test]
fn interp_examples() {
    assert_eq!(bounds::interp_error_bound(2.0, 0.0, 3.0), 0.0);
    assert_eq!(bounds::interp_error_bound(2.0, 1.0, 1.0), 0.5);
}

#[test]
fn mc_lp_constants_fixture() {
    let c = bounds::mc_lp_constants(&params(1.0, 1.0));
    for v in [c.moment(), c.c1(), c.c2(), c.total()] {
        assert!(v.is_finite() && v > 0.0);
    }
    assert!(close(c.moment(), 9.280794685077206, 1e-12));
    assert!(close(c.c1(), 181207.75311796437, 1e-12));
    assert!(close(c.c2(), 16.969256741395437, 1e-12));
    assert!(close(c.total(), 181224.72237470577, 1e-12));
}

#[test]
fn mc_lp_total_is_a_maximum() {
    for (k, eta, p) in [(1.0, 1.0, 2.0), (0.5, 3.0, 4.0), (2.0, 1.5, 2.0), (0.1, 1.0, 10.0)] {
        let c = bounds::mc_lp_constants(&RegularityParams::new(1.0, k, eta, p).unwrap());
        let slack = 1.0 + 1e-12;
        assert!(c.total() * slack >= c.c1() + c.c2());
        assert!(c.total() * slack >= 8.0 * k * (1.0 + c.moment()) * (p - 1.0).sqrt());
    }
}

#[test]
fn mc_lp_rates() {
    let pr = params(1.0, 1.0);
    assert_eq!(bounds::mc_lp_error_bound(&pr, 3, f64::INFINITY, f64::INFINITY, 1.0), 0.0);
    for n in [1.0, 7.0, 1e6] {
        let a = bounds::mc_lp_error_bound(&pr, 3, n, f64::INFINITY, 1.0);
        let b = bounds::mc_lp_error_bound(&pr, 3, 4.0 * n, f64::INFINITY, 1.0);
        assert!(close(a / b, 2.0, 1e-14));
    }
}

/// Root mean square error of the Monte Carlo Euler average for the heat
/// problem against the exact solution, with `outer` points from the
/// uniform measure and fresh paths at each point.
fn heat_mc_error(d: usize, steps: usize, samples: usize, outer: usize, seed: u64) -> Estimate {
    let mut g = Normals::new(seed);
    let h = 1.0 / steps as f64;
    let mut sq = Vec::with_capacity(outer);
    for _ in 0..outer {
        let t = g.uniform(0.0, 1.0);
        let x: Vec<f64> = (0..d).map(|_| g.uniform(-1.0, 1.0)).collect();
        let n = ((t / h) as usize).min(steps - 1);
        let lam = t / h - n as f64;
        let mut acc = 0.0;
        for _ in 0..samples {
            let mut v = 0.0;
            for &xi in &x {
                // B = sqrt(2) I; the interpolated Brownian path at t
                let w_n = (n as f64 * h).sqrt() * g.next();
                let w = w_n + lam * h.sqrt() * g.next();
                v += (xi + 2f64.sqrt() * w).max(0.0);
            }
            acc += v;
        }
        let err = acc / samples as f64 - heat_relu_exact(t, &x);
        sq.push(err * err);
    }
    Estimate::from_samples(&sq).root(2.0)
}

#[test]
fn mc_lp_dominates_heat_simulation() {
    let p = heat_relu_problem(1);
    let est = heat_mc_error(1, 256, 256, 2000, 6);
    let bound = bounds::mc_lp_error_bound(&p.problem.params, 1, 256.0, 256.0, 1.0);
    assert!(est.mean - 3.0 * est.std_error <= bound);
    // the empirical error itself is of order M^{-1/2}
    assert!(est.mean < 0.2);
}

#[test]
fn mc_lp_domination_matrix() {
    for d in [1, 2, 5] {
        let p = heat_relu_problem(d);
        for n in [16, 256] {
            for m in [16, 256] {
                let est = heat_mc_error(d, n, m, 300, (d * 1000 + n + m) as u64);
                let bound = bounds::mc_lp_error_bound(&p.problem.params, d, n as f64, m as f64, 1.0);
                assert!(est.mean - 3.0 * est.std_error <= bound, "d={d} N={n} M={m}");
            }
        }
    }
}

#[test]
fn frak_d_values() {
    assert_eq!(bounds::frak_d(1.0, 3.0), 8136.0);
    for eps in [1.0, 0.5, 0.25] {
        assert_eq!(bounds::frak_d(eps, 3.0), bounds::frak_d_q3(eps));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let eps: f64 = rng.random_range(1e-9..=1.0);
        assert!(close(bounds::frak_d(eps, 3.0), bounds::frak_d_q3(eps), 1e-12));
    }
    for q in [2.5, 3.0, 7.0] {
        for eps in [1.0, 0.3, 1e-5] {
            let step = bounds::frak_d(eps / 2.0, q) - bounds::frak_d(eps, q);
            assert!(close(step, 720.0 * q / (q - 2.0), 1e-10));
        }
    }
}

#[test]
fn euler_emulation_examples() {
    assert_eq!(bounds::euler_emulation_error_bound(0.0, 4, 3.0, 2.0, 5.0), 0.0);
    let env = bounds::growth_envelope(0.0, 0.0, 1.0, 1.0, 3, &[0.0; 12]);
    assert!(env.iter().all(|&g| g == 0.0));
    assert_eq!(bounds::euler_emulation_error_bound(0.1, 4, 3.0, env[1], env[2]), 0.1 * 2.0 * 2.0);
}

#[test]
fn growth_envelope_dominates_euler_paths() {
    // drift -x: |mu(x)| <= |x|
    let drift = FnField::new(3, |x: &[f64], out: &mut [f64]| {
        for (o, v) in out.iter_mut().zip(x) {
            *o = -v;
        }
    });
    let mut g = Normals::new(8);
    for steps in [1, 5, 32] {
        let grid = TimeGrid::uniform(1.0, steps).unwrap();
        for _ in 0..300 {
            let x: Vec<f64> = (0..3).map(|_| g.uniform(-1.0, 1.0)).collect();
            let inc: Vec<f64> = (0..3 * steps).map(|_| g.next() / (steps as f64).sqrt()).collect();
            let y = euler_grid(&x, &drift, &grid, &inc).unwrap();
            let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let env = bounds::growth_envelope(xn, 0.0, 1.0, 1.0, 3, &inc);
            for n in 0..=steps {
                let yn = y.value(n).iter().map(|v| v * v).sum::<f64>().sqrt();
                assert!(yn <= env[n] * (1.0 + 1e-12));
            }
        }
    }
}

#[test]
fn mc_sum_examples() {
    assert_eq!(bounds::mc_sum_error_bound(0.0, 3, 1.0, 2.0, &[2.0, 3.0], &[4.0, 5.0]), 0.0);
    let (eps, c, d) = (0.01, 1.5, 4);
    let v = bounds::mc_sum_error_bound(eps, d, 0.0, c, &[1.0], &[1.0]);
    assert!(close(v, 6.0 * eps * c * 2.0, 1e-15));
    assert_eq!(bounds::mc_sum_aux(0.5, 0.0, 0.0, 1.0, 0.5, 2.0), 2.0);
}

#[test]
fn dnn_param_scaling() {
    let pr = params(1.0, 1.0);
    let a = bounds::dnn_param_bound_ln(&pr, 3, 5, 7, 0.01);
    let b = bounds::dnn_param_bound_ln(&pr, 3, 5, 14, 0.01);
    assert!(close((b - a).exp(), 4.0, 1e-12));
    let consts = bounds::dnn_constants(&pr);
    let at_one = bounds::dnn_param_bound_ln(&pr, 3, 5, 7, 1.0);
    let direct = consts.ln_c2 + 2.0 * 7f64.ln() + 10.0 * 5f64.ln() + 24.0 * 3f64.ln();
    assert!(close(at_one, direct, 1e-14));
}

#[test]
fn dnn_constants_fixture() {
    let c = bounds::dnn_constants(&params(1.0, 1.0));
    assert!(close(c.c1(), 2393051370.728941, 1e-12));
    assert!(close(c.c2(), 2f64.powi(57), 1e-14));
    assert!(close(c.c3(), 181224.72237470577, 1e-12));
    assert!(close(c.ln_combined(), 57.0 * 2f64.ln(), 1e-15));
}

#[test]
fn plan_small_eps_one() {
    let plan = bounds::plan_budget(&params(1.0, 1.0), 1, 1.0).unwrap();
    assert!(plan.steps.log10() >= 0.0);
    assert!(plan.samples.log10() >= 0.0);
    assert!(plan.delta.log10() <= 0.0);
    // log10 (3 K eta)^2 with K = 2^57
    assert!((plan.steps.log10() - 35.27166201513318).abs() < 1e-9);
}

#[test]
fn plan_fixture_and_rate() {
    let pr = params(1.0, 1.0);
    let plan = bounds::plan_budget(&pr, 10, 0.1).unwrap();
    assert!(matches!(plan.steps, Magnitude::Log10(_)));
    assert!((plan.steps.log10() - 55.27166201513318).abs() < 1e-9);
    assert!((plan.samples.log10() - 43.27166201513318).abs() < 1e-9);
    assert!((plan.delta.log10() + 29.63583100756659).abs() < 1e-9);
    let half = bounds::plan_budget(&pr, 10, 0.05).unwrap();
    assert!((half.steps.log10() - plan.steps.log10() - 4f64.log10()).abs() < 1e-9);
    assert!((half.samples.log10() - plan.samples.log10() - 4f64.log10()).abs() < 1e-9);
    assert!(bounds::plan_budget(&pr, 10, 0.0).is_err());
    assert!(bounds::plan_budget(&pr, 0, 0.5).is_err());
}

#[test]
fn plan_cost_exponent() {
    // c = 18 + 12 + 4 + 4 + (10 + 6 + 2) * 10 at kappa = eta = 1
    assert_eq!(bounds::cost_exponent(1.0, 1.0), 218.0);
    let plan = bounds::plan_budget(&params(1.0, 1.0), 1, 1.0).unwrap();
    assert_eq!(plan.cost_exponent, 218.0);
}

#[test]
fn lebesgue_examples() {
    let l = bounds::lebesgue_eta(1.0, 1.0, 2.0, -1.0, 1.0).unwrap();
    assert_eq!(l.q, 2.0);
    assert_eq!(l.eta, 7.0);
    assert_eq!(l.delta(0.3), 0.3);
    let short = bounds::lebesgue_eta(0.5, 0.2, 3.0, -0.1, 0.1).unwrap();
    assert_eq!(short.delta(0.3), 0.3);
    assert_eq!(short.eta, 3.0 + 1.0);
    let long = bounds::lebesgue_eta(4.0, 0.5, 3.0, 0.0, 2.0).unwrap();
    assert!(close(long.delta(1.0), 1.0, 1e-15));
    assert!(bounds::lebesgue_eta(1.0, 1.0, 2.0, 1.0, -1.0).is_err());
}

#[test]
fn gronwall_limits_and_domain() {
    assert!(bounds::gronwall_moment_bound(0.0, 2.0, 0.0, 0.0, 1.0, 0.0, 1.0).is_err());
    assert!(bounds::gronwall_moment_bound(0.5, 2.0, 0.0, 0.0, 1.0, 0.0, 1.0).is_err());
    for q in [0.5, 1.0, 3.0] {
        let v = bounds::gronwall_moment_bound(4.0, q, 0.0, 0.0, 1.0, 0.0, 1.0).unwrap();
        assert!(close(v, 2.0 * 2f64.powf(1.0 / q - 1.0).max(1.0), 1e-15));
    }
}

#[test]
fn gronwall_dominates_simulation() {
    // nu uniform probability on [0, 1] x [-1, 1], M_n = |W_{tau_n}|, 16 steps
    let steps = 16;
    let h = 1.0 / steps as f64;
    let mut g = Normals::new(9);
    let mut h2sq = Vec::new();
    let mut prod_sq = Vec::new();
    for _ in 0..100_000 {
        let x = g.uniform(-1.0, 1.0);
        let mut w = 0.0f64;
        let mut wmax = 0.0f64;
        for _ in 0..steps {
            w += h.sqrt() * g.next();
            wmax = wmax.max(w.abs());
        }
        let base = x.abs() + wmax;
        let h2 = 1.0 + base.powi(2);
        let h3 = 1.0 + base.powi(3);
        h2sq.push(h2 * h2);
        prod_sq.push((h2 * h3).powi(2));
    }
    let moment_const = 1.0;
    // E|W_1|^4 = 3 and E|W_1|^12 = 10395
    let item1 = bounds::gronwall_moment_bound(2.0, 2.0, 0.0, 0.0, moment_const, 3f64.powf(0.25), 1.0).unwrap();
    let est1 = Estimate::from_samples(&h2sq).root(2.0);
    assert!(est1.mean - 3.0 * est1.std_error <= item1, "{} > {item1}", est1.mean);
    let item2 = bounds::gronwall_product_bound(1.0, 2.0, 0.0, 0.0, moment_const, 10395f64.powf(1.0 / 12.0), 1.0).unwrap();
    let est2 = Estimate::from_samples(&prod_sq).root(2.0);
    assert!(est2.mean - 3.0 * est2.std_error <= item2, "{} > {item2}", est2.mean);
}

#[test]
fn kappa_adapters() {
    assert_eq!(bounds::corollary_kappa(1.0), 3.0);
    assert_eq!(bounds::corollary_kappa(0.25), 1.25);
    assert_eq!(bounds::laplace_kappa(1.0), 4.0);
    assert_eq!(bounds::laplace_kappa(3.0), 9.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn weak_error_monotone(
        e0 in 0.0f64..1.0, e1 in 0.0f64..1.0, e2 in 0.0f64..1.0, h in 0.0f64..1.0,
        bump in 0.0f64..0.5, which in 0usize..4, xi in 0.0f64..3.0,
    ) {
        let base = bounds::weak_error_bound(&weak_params(e0, e1, e2), xi, 0.5, h).unwrap();
        let mut w = weak_params(e0, e1, e2);
        let mut hh = h;
        match which {
            0 => w.eps0 += bump,
            // eps1 also enters as the growth constant C of the perturbed drift
            1 => { w.eps1 += bump; w.big_c += bump; }
            2 => w.eps2 += bump,
            _ => hh += bump,
        }
        let bumped = bounds::weak_error_bound(&w, xi, 0.5, hh).unwrap();
        prop_assert!(base >= 0.0);
        prop_assert!(bumped >= base * (1.0 - 1e-12));
    }

    #[test]
    fn mc_lp_monotone(k in 0.1f64..3.0, eta in 1.0f64..5.0, d in 1usize..20, n in 1.0f64..1e6, m in 1.0f64..1e6, f in 1.0f64..10.0) {
        let pr = params(k, eta);
        let b = bounds::mc_lp_error_bound(&pr, d, n, m, 1.0);
        prop_assert!(b > 0.0 && b.is_finite());
        prop_assert!(bounds::mc_lp_error_bound(&pr, d, n * f, m, 1.0) <= b);
        prop_assert!(bounds::mc_lp_error_bound(&pr, d, n, m * f, 1.0) <= b);
        prop_assert!(bounds::mc_lp_error_bound(&pr, d + 1, n, m, 1.0) >= b);
    }

    #[test]
    fn dnn_error_monotone(d in 1usize..10, n in 1.0f64..1e4, m in 1.0f64..1e4, delta in 1e-6f64..1.0, f in 0.0f64..1.0) {
        let pr = params(1.0, 1.0);
        let b = bounds::dnn_error_bound(&pr, d, n, m, delta, 1.0);
        prop_assert!(b > 0.0 && b.is_finite());
        prop_assert!(bounds::dnn_error_bound(&pr, d, n, m, delta * f, 1.0) <= b);
        prop_assert!(b >= bounds::mc_lp_error_bound(&pr, d, n, m, 1.0));
    }

    #[test]
    fn dnn_param_monotone(n in 1usize..100, m in 1usize..100, delta in 1e-6f64..1.0, f in 0.0f64..1.0) {
        let pr = params(1.0, 1.0);
        let b = bounds::dnn_param_bound_ln(&pr, 2, n, m, delta);
        prop_assert!(bounds::dnn_param_bound_ln(&pr, 2, n, m, delta * f) >= b);
        prop_assert!(bounds::dnn_param_bound_ln(&pr, 2, n + 1, m, delta) >= b);
        prop_assert!(bounds::dnn_param_bound_ln(&pr, 2, n, m + 1, delta) >= b);
    }

    #[test]
    fn frak_d_grows_as_eps_shrinks(eps in 1e-12f64..1.0, f in 0.0f64..1.0, q in 2.1f64..10.0) {
        prop_assert!(bounds::frak_d(eps * f, q) >= bounds::frak_d(eps, q));
        prop_assert!(bounds::frak_d(eps, q) > 0.0);
    }

    #[test]
    fn plan_monotone_in_eps(eps in 1e-6f64..1.0, f in 0.01f64..1.0, d in 1usize..50) {
        let pr = params(1.0, 1.0);
        let a = bounds::plan_budget(&pr, d, eps).unwrap();
        let b = bounds::plan_budget(&pr, d, eps * f).unwrap();
        prop_assert!(b.steps.log10() >= a.steps.log10());
        prop_assert!(b.samples.log10() >= a.samples.log10());
        prop_assert!(b.delta.log10() <= a.delta.log10());
        prop_assert!(b.cost.log10() >= a.cost.log10());
    }

    #[test]
    fn euler_emulation_monotone(eps in 0.0f64..1.0, g0 in 0.0f64..5.0, g1 in 0.0f64..5.0, bump in 0.0f64..1.0, d in 1usize..10) {
        let a = bounds::euler_emulation_error_bound(eps, d, 3.0, g0, g1);
        prop_assert!(a >= 0.0);
        prop_assert!(bounds::euler_emulation_error_bound(eps + bump, d, 3.0, g0, g1) >= a);
        prop_assert!(bounds::euler_emulation_error_bound(eps, d, 3.0, g0 + bump, g1) >= a);
    }
}
