use kolmonet_core::reference::{
    by_name, heat_relu_exact, heat_relu_problem, normal_cdf, ou_linear_problem, quadratic_heat_problem, TestProblem, OU_GENERATOR,
};
use kolmonet_core::sde_sim::{feynman_kac, ZeroField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn init(p: &TestProblem, x: &[f64]) -> f64 {
    p.problem.init.realize_scalar(x).unwrap()
}

fn all_problems(d: usize) -> Vec<TestProblem> {
    vec![heat_relu_problem(d), ou_linear_problem(d), quadratic_heat_problem(d, 1.0)]
}

#[test]
fn heat_at_the_origin() {
    for t in [0.01, 0.3, 1.0] {
        assert!((heat_relu_exact(t, &[0.0]) - (t / std::f64::consts::PI).sqrt()).abs() < 1e-15);
    }
    let p = heat_relu_problem(3);
    assert_eq!(p.exact(0.0, &[0.5, -2.0, 1.0]), 1.5);
    assert!((p.exact(1e-12, &[0.5, -2.0, 1.0]) - 1.5).abs() < 1e-5);
}

#[test]
fn heat_matches_feynman_kac_at_fixed_point() {
    let p = heat_relu_problem(2);
    let f0 = |x: &[f64]| init(&p, x);
    let est = feynman_kac(&f0, &p.problem.drift, &p.problem.generator, 0.5, &[1.0, -1.0], 40_000, 1, 1).unwrap();
    let exact = p.exact(0.5, &[1.0, -1.0]);
    assert!((est.mean - exact).abs() <= 4.0 * est.std_error, "{} vs {exact}", est.mean);
}

#[test]
fn exact_solutions_match_feynman_kac_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for p in all_problems(2) {
        let steps = if p.name == "ou_linear" { 128 } else { 1 };
        for k in 0..20 {
            let t: f64 = rng.random_range(0.05..=1.0);
            let x: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let exact_init = |y: &[f64]| p.exact_init(y);
            let est = match p.name {
                // the network initial value is only accurate on its range
                "quadratic_heat" => feynman_kac(&exact_init, &ZeroField(2), &p.problem.generator, t, &x, 4000, steps, k),
                _ => {
                    let f0 = |y: &[f64]| init(&p, y);
                    feynman_kac(&f0, &p.problem.drift, &p.problem.generator, t, &x, 4000, steps, k)
                }
            }
            .unwrap();
            let exact = p.exact(t, &x);
            assert!((est.mean - exact).abs() <= 4.0 * est.std_error, "{} at t={t}: {} vs {exact}", p.name, est.mean);
        }
    }
}

#[test]
fn ou_examples() {
    let p = ou_linear_problem(3);
    assert_eq!(p.exact(0.0, &[1.0, 2.0, -0.5]), 2.5);
    for t in [0.0, 0.4, 1.0] {
        assert_eq!(p.exact(t, &[0.0; 3]), 0.0);
    }
    assert_eq!(p.problem.generator.get(1, 1), OU_GENERATOR);
    let f0 = |y: &[f64]| init(&p, y);
    let x = [0.7, -0.2, 0.4];
    let est = feynman_kac(&f0, &p.problem.drift, &p.problem.generator, 1.0, &x, 20_000, 256, 3).unwrap();
    let exact = p.exact(1.0, &x);
    assert!((est.mean - exact).abs() <= 4.0 * est.std_error, "{} vs {exact}", est.mean);
}

#[test]
fn quadratic_init_error_on_grid() {
    for (d, r) in [(1, 1.0), (2, 1.0), (2, 2.5)] {
        let p = quadratic_heat_problem(d, r);
        assert!(p.init_error <= 1e-3);
        let pts = 81usize;
        let coord = |i: usize| -r + 2.0 * r * i as f64 / (pts - 1) as f64;
        for idx in 0..pts.pow(d as u32) {
            let x: Vec<f64> = (0..d).map(|k| coord(idx / pts.pow(k as u32) % pts)).collect();
            let gap = init(&p, &x) - p.exact_init(&x);
            assert!(gap >= -1e-12 && gap <= p.init_error + 1e-12, "{x:?}: {gap}");
        }
    }
    let p = quadratic_heat_problem(4, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let x: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let gap = init(&p, &x) - p.exact_init(&x);
        assert!(gap >= -1e-12 && gap <= p.init_error + 1e-12);
    }
}

#[test]
fn quadratic_examples() {
    let p = quadratic_heat_problem(3, 1.0);
    for t in [0.0, 0.25, 1.0] {
        assert_eq!(p.exact(t, &[0.0; 3]), 6.0 * t);
    }
}

/// Second-order finite difference residual of `u_t - (drift . grad u + sum a_ij d_ij u)`.
fn pde_residual(p: &TestProblem, t: f64, x: &[f64], h: f64) -> f64 {
    let d = x.len();
    let ut = (p.exact(t + h, x) - p.exact(t - h, x)) / (2.0 * h);
    let mu = p.problem.drift.realize(x).unwrap();
    let mut rhs = 0.0;
    let shifted = |i: usize, s: f64| {
        let mut y = x.to_vec();
        y[i] += s;
        p.exact(t, &y)
    };
    for i in 0..d {
        let grad = (shifted(i, h) - shifted(i, -h)) / (2.0 * h);
        let lap = (shifted(i, h) - 2.0 * p.exact(t, x) + shifted(i, -h)) / (h * h);
        rhs += mu[i] * grad + p.problem.generator.get(i, i) * lap;
    }
    ut - rhs
}

#[test]
fn exact_solutions_solve_the_pde() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in all_problems(2) {
        for _ in 0..5 {
            let t: f64 = rng.random_range(0.1..=1.0);
            let x: Vec<f64> = (0..2).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let res = pde_residual(&p, t, &x, 1e-3);
            assert!(res.abs() < 1e-5, "{} at ({t}, {x:?}): {res}", p.name);
        }
    }
}

#[test]
fn heat_cdf_consistency() {
    // d/dx u(t, x) = Phi(x / sqrt(2t)) for d = 1
    let (t, x, h) = (0.3, 0.4, 1e-5);
    let slope = (heat_relu_exact(t, &[x + h]) - heat_relu_exact(t, &[x - h])) / (2.0 * h);
    assert!((slope - normal_cdf(x / (2.0 * t).sqrt())).abs() < 1e-8);
}

fn sample_point(rng: &mut ChaCha8Rng, d: usize) -> Vec<f64> {
    let scale: f64 = [0.1, 1.0, 5.0, 30.0][rng.random_range(0..4)];
    (0..d).map(|_| scale * rng.random_range(-1.0..=1.0)).collect()
}

/// Every hypothesis of the approximation theorem with `eps = 1`, the
/// problem's own growth and Lipschitz data, and the measure condition.
#[test]
fn hypothesis_inequalities_hold() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in [1, 2, 5] {
        for p in all_problems(d) {
            let pr = &p.problem;
            let k = pr.params.kappa;
            let kd = k * (d as f64).powf(k);
            let tol = 1.0 + 1e-12;
            assert!(pr.drift.param_count() as f64 <= kd * tol, "{} d={d}", p.name);
            assert!(pr.init.param_count() as f64 <= kd * tol, "{} d={d}", p.name);
            let trace: f64 = (0..d).map(|i| pr.generator.get(i, i)).sum();
            // measure condition, bounding the moment by the sup over the box
            let r = 2.0 * (2.0 * k).max(3.0);
            let moment = (d as f64).sqrt().powf(r);
            assert!(moment.max(1.0) <= pr.params.eta * (d as f64).powf(pr.params.eta) * tol);
            for _ in 0..10_000 {
                let x = sample_point(&mut rng, d);
                let y = if rng.random_bool(0.5) {
                    sample_point(&mut rng, d)
                } else {
                    x.iter().map(|v| v + 1e-3 * rng.random_range(-1.0..=1.0)).collect()
                };
                let (nx, ny) = (norm(&x), norm(&y));
                let diff: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a - b).collect();
                let dxy = norm(&diff);
                let fx = pr.drift.realize(&x).unwrap();
                let fy = pr.drift.realize(&y).unwrap();
                let fdiff: Vec<f64> = fx.iter().zip(&fy).map(|(a, b)| a - b).collect();
                assert!(norm(&fdiff) <= k * dxy * tol + 1e-12);
                assert!(norm(&fx) <= k * ((d as f64).powf(k) + nx) * tol);
                assert!(norm(&fx) <= (pr.drift_growth.big_c + pr.drift_growth.c * nx) * tol + 1e-12);
                let (gx, gy) = (init(&p, &x), init(&p, &y));
                let lip = (gx - gy).abs();
                assert!(lip <= kd * (1.0 + nx.powf(k) + ny.powf(k)) * dxy * tol + 1e-12, "{} d={d}", p.name);
                let ll = pr.init_lipschitz;
                assert!(lip <= ll.frak_c * (1.0 + nx.powf(ll.alpha) + ny.powf(ll.alpha)) * dxy * tol + 1e-12, "{} d={d}", p.name);
                let f0x = p.exact_init(&x);
                assert!((f0x - gx).abs() <= kd * (1.0 + nx.powf(k)) * tol + 1e-12);
                assert!(f0x.abs() + trace <= kd * (1.0 + nx.powf(k)) * tol, "{} d={d} x={x:?}", p.name);
            }
        }
    }
}

#[test]
fn registry_round_trip() {
    for d in [1, 3] {
        for name in ["heat_relu", "ou_linear", "quadratic_heat"] {
            let p = by_name(name, d).unwrap();
            assert_eq!(p.problem.drift.in_dim(), d);
            assert_eq!(p.problem.init.out_dim(), 1);
            assert_eq!(p.problem.params.horizon, 1.0);
        }
    }
}
