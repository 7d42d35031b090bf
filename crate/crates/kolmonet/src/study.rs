//! Property and convergence suites behind `kolmonet study`.
//!
//! Each suite returns a table whose `pass` column flags bound violations.
//! All randomness comes from counter-based streams keyed by the seed, and
//! parallel loops collect in index order, so tables are reproducible.

use kolmonet_core::ann_calculus::{
    average_nets, compose, concat_with_identity, growth_product_net, identity_net, Layer, Matrix, Network,
};
use kolmonet_core::bounds::{self, Budget, RegularityParams, WeakErrorParams};
use kolmonet_core::builder::{
    build_euler_net, mc_euler_average, mc_sum_bound_at, path_envelope, sample_noise, step_index, PdeProblem,
};
use kolmonet_core::reference::{heat_relu_problem, ou_linear_problem, TestProblem};
use kolmonet_core::rng::CounterRng;
use kolmonet_core::sde_sim::{
    coarsen_path, continuous_scheme_at, euler_grid, path_increments, FnField, TimeGrid, ZeroField,
};
use kolmonet_core::stats::Estimate;
use rayon::prelude::*;

/// Tag for the streams used by the suites.
const STUDY: u64 = 0x7374_7564;

#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Rows whose `pass` column reads `false`.
    pub fn violations(&self) -> usize {
        match self.header.iter().position(|h| *h == "pass") {
            Some(i) => self.rows.iter().filter(|r| r[i] == "false").count(),
            None => 0,
        }
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn num(v: f64) -> String {
    format!("{v:e}")
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn rng(seed: u64, a: u64, b: u64) -> CounterRng {
    CounterRng::new(seed, a, b, STUDY)
}

fn dominated(est: &Estimate, bound: f64) -> bool {
    est.mean - 3.0 * est.std_error <= bound
}

// ---------------------------------------------------------------- euler

/// Root mean square gap between the interpolated and the continuous-time
/// Euler scheme at the midpoint of step `N/2`, `d = 1`, `B = 1`, zero drift.
pub fn strong_interpolation(steps: usize, paths: usize, refine: usize, seed: u64) -> Estimate {
    let b = Matrix::identity(1);
    let coarse = TimeGrid::uniform(1.0, steps).expect("grid");
    let fine = TimeGrid::uniform(1.0, steps * refine).expect("grid");
    let t = coarse.tau(steps / 2) + 0.5 * coarse.step_size();
    let sq: Vec<f64> = (0..paths as u64)
        .into_par_iter()
        .map(|m| {
            let inc = path_increments(seed, m, &fine, &b);
            let state = euler_grid(&[0.0], &ZeroField(1), &coarse, &coarsen_path(&inc, 1, refine)).expect("scheme");
            let y = state.interpolate(t).expect("time");
            let z = continuous_scheme_at(&state, &ZeroField(1), &inc, refine, t).expect("time");
            (y[0] - z[0]).powi(2)
        })
        .collect();
    Estimate::from_samples(&sq).root(2.0)
}

/// Largest empirical `(E |Y_n|^q)^(1/q)` over the grid, its bound, and the
/// largest pathwise ratio `|Y_n| / g_n`.
pub struct MomentCheck {
    pub moment: Estimate,
    pub bound: f64,
    pub envelope_ratio: f64,
}

pub fn euler_moments(p: &TestProblem, steps: usize, paths: usize, q: f64, seed: u64) -> MomentCheck {
    let pr = &p.problem;
    let d = pr.dim();
    let x = vec![0.5; d];
    let b = pr.diffusion();
    let grid = TimeGrid::uniform(pr.horizon, steps).expect("grid");
    let per_path: Vec<(Vec<f64>, f64)> = (0..paths as u64)
        .into_par_iter()
        .map(|m| {
            let inc = path_increments(seed, m, &grid, &b);
            let state = euler_grid(&x, &pr.drift, &grid, &inc).expect("scheme");
            let env = path_envelope(&pr.drift_growth, &grid, &x, &inc);
            let mut ratio = 0.0f64;
            let norms: Vec<f64> = (0..=steps)
                .map(|n| {
                    let v = norm(state.value(n));
                    if env[n] > 0.0 {
                        ratio = ratio.max(v / env[n]);
                    } else if v > 0.0 {
                        ratio = f64::INFINITY;
                    }
                    v
                })
                .collect();
            (norms, ratio)
        })
        .collect();
    let mut worst: Option<Estimate> = None;
    for n in 0..=steps {
        let vals: Vec<f64> = per_path.iter().map(|(v, _)| v[n].powf(q)).collect();
        let e = Estimate::from_samples(&vals).root(q);
        if worst.is_none_or(|w| e.mean - 3.0 * e.std_error > w.mean - 3.0 * w.std_error) {
            worst = Some(e);
        }
    }
    let trace_bb: f64 = 2.0 * (0..d).map(|i| pr.generator.get(i, i)).sum::<f64>();
    let beta = bounds::gaussian_moment_bound(q, pr.horizon * trace_bb);
    let g = &pr.drift_growth;
    MomentCheck {
        moment: worst.expect("at least one grid point"),
        bound: bounds::apriori_sde_bound(norm(&x), g.big_c, g.c, pr.horizon, beta),
        envelope_ratio: per_path.iter().map(|(_, r)| *r).fold(0.0, f64::max),
    }
}

pub fn study_euler(seed: u64) -> Table {
    let mut t = Table::new(&["quantity", "problem", "d", "N", "M", "estimate", "std_error", "bound", "pass"]);
    let paths = 20_000;
    for steps in [2, 4, 8, 16] {
        let e = strong_interpolation(steps, paths, 16, seed);
        let bound = bounds::interp_error_bound(2.0, 1.0 / steps as f64, 1.0);
        let ok = (e.mean - bound).abs() <= 3.0 * e.std_error;
        t.push(vec![
            "interpolation_rms".into(),
            "brownian".into(),
            "1".into(),
            steps.to_string(),
            paths.to_string(),
            num(e.mean),
            num(e.std_error),
            num(bound),
            ok.to_string(),
        ]);
    }
    for d in [1, 2, 5] {
        for p in [ou_linear_problem(d), heat_relu_problem(d)] {
            let (steps, m) = (16, 4000);
            let c = euler_moments(&p, steps, m, 4.0, seed);
            t.push(vec![
                "moment_q4".into(),
                p.name.into(),
                d.to_string(),
                steps.to_string(),
                m.to_string(),
                num(c.moment.mean),
                num(c.moment.std_error),
                num(c.bound),
                dominated(&c.moment, c.bound).to_string(),
            ]);
            t.push(vec![
                "envelope_ratio".into(),
                p.name.into(),
                d.to_string(),
                steps.to_string(),
                m.to_string(),
                num(c.envelope_ratio),
                num(0.0),
                num(1.0),
                (c.envelope_ratio <= 1.0 + 1e-12).to_string(),
            ]);
        }
    }
    t
}

// ----------------------------------------------------------------- weak

/// Weak error parameters for the unperturbed OU scheme in `d = 1`:
/// `f0(x) = x`, drift `-x`, `B = 1`, `p = q = 2`.
pub fn ou_weak_params() -> WeakErrorParams {
    WeakErrorParams {
        horizon: 1.0,
        l0: 1.0,
        l1: 1.0,
        ell: 0.0,
        sigma0: 0.0,
        sigma1: 0.0,
        sigma2: 0.0,
        eps0: 0.0,
        eps1: 0.0,
        eps2: 0.0,
        c: 1.0,
        big_c: 0.0,
        p: 2.0,
        q: 2.0,
        trace_bstar_b: 1.0,
    }
}

/// `|E X_T - E Y_N|` for the OU drift `-x` from `x`. The scheme is linear,
/// so its mean is the scheme driven by zero increments.
pub fn ou_weak_gap(x: f64, steps: usize) -> f64 {
    let grid = TimeGrid::uniform(1.0, steps).expect("grid");
    let drift = FnField::new(1, |y: &[f64], out: &mut [f64]| out[0] = -y[0]);
    let mean = euler_grid(&[x], &drift, &grid, &vec![0.0; steps]).expect("scheme").value(steps)[0];
    (x * (-1.0f64).exp() - mean).abs()
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub const WEAK_STEPS: [usize; 6] = [2, 4, 8, 16, 32, 64];

/// Largest accepted weak-error slope: rate 1/2 with a fit tolerance of 0.15.
pub const WEAK_SLOPE_LIMIT: f64 = -0.35;

pub fn study_weak(_seed: u64) -> Table {
    let mut t = Table::new(&["quantity", "N", "estimate", "bound", "pass"]);
    let x = 0.8;
    let w = ou_weak_params();
    let mut gaps = Vec::new();
    for steps in WEAK_STEPS {
        let gap = ou_weak_gap(x, steps);
        let bound = bounds::weak_error_bound(&w, x, 0.0, 1.0 / steps as f64).expect("conjugate exponents");
        gaps.push(gap);
        t.push(vec!["weak_error".into(), steps.to_string(), num(gap), num(bound), (gap <= bound).to_string()]);
    }
    let ns: Vec<f64> = WEAK_STEPS.iter().map(|&n| n as f64).collect();
    let slope = loglog_slope(&ns, &gaps);
    t.push(vec!["loglog_slope".into(), String::new(), num(slope), num(WEAK_SLOPE_LIMIT), (slope <= WEAK_SLOPE_LIMIT).to_string()]);
    t
}

// ------------------------------------------------------------- calculus

fn random_net(r: &mut CounterRng, din: usize, dout: usize, length: usize) -> Network {
    let mut dims = vec![din];
    for _ in 1..length {
        dims.push(1 + (r.next_u64() % 5) as usize);
    }
    dims.push(dout);
    let layers = dims
        .windows(2)
        .map(|w| {
            let data: Vec<f64> = (0..w[0] * w[1]).map(|_| 2.0 * r.uniform() - 1.0).collect();
            let bias: Vec<f64> = (0..w[1]).map(|_| 2.0 * r.uniform() - 1.0).collect();
            Layer::new(Matrix::from_dense(w[1], w[0], &data), bias).expect("shape")
        })
        .collect();
    Network::new(layers).expect("shape")
}

fn random_point(r: &mut CounterRng, d: usize, scale: f64) -> Vec<f64> {
    (0..d).map(|_| scale * (2.0 * r.uniform() - 1.0)).collect()
}

/// Largest relative difference between the parameters of two networks of
/// equal shape, or infinity when the shapes differ.
pub fn layer_distance(a: &Network, b: &Network) -> f64 {
    if a.dims() != b.dims() {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for (la, lb) in a.layers().iter().zip(b.layers()) {
        let wa = la.weight().to_dense();
        let wb = lb.weight().to_dense();
        for (x, y) in wa.iter().chain(la.bias()).zip(wb.iter().chain(lb.bias())) {
            worst = worst.max((x - y).abs() / x.abs().max(y.abs()).max(1.0));
        }
    }
    worst
}

fn rel(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().chain(b).fold(1.0f64, |m, v| m.max(v.abs()));
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max) / scale
}

struct Check {
    name: &'static str,
    failures: usize,
    max_error: f64,
    tolerance: f64,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Check { name, failures: 0, max_error: 0.0, tolerance }
    }

    fn record(&mut self, err: f64) {
        self.max_error = self.max_error.max(err);
        if !(err <= self.tolerance) {
            self.failures += 1;
        }
    }
}

/// Runs every calculus check on `instances` random networks. Returns
/// `(name, failures, max_error, tolerance)` per check.
pub fn calculus_checks(instances: usize, seed: u64) -> Vec<(&'static str, usize, f64, f64)> {
    let mut checks = [
        Check::new("compose_realization", 1e-10),
        Check::new("compose_associativity", 1e-13),
        Check::new("concat_realization", 1e-10),
        Check::new("concat_length", 0.0),
        Check::new("identity_exact", 0.0),
        Check::new("param_count_formula", 0.0),
        Check::new("average_linearity", 1e-12),
    ];
    for i in 0..instances as u64 {
        let mut r = rng(seed, 1, i);
        let (a, b, c, d) = (
            1 + (r.next_u64() % 4) as usize,
            1 + (r.next_u64() % 4) as usize,
            1 + (r.next_u64() % 4) as usize,
            1 + (r.next_u64() % 4) as usize,
        );
        let lens: Vec<usize> = (0..3).map(|_| 1 + (r.next_u64() % 4) as usize).collect();
        let h = random_net(&mut r, a, b, lens[0]);
        let g = random_net(&mut r, b, c, lens[1]);
        let f = random_net(&mut r, c, d, lens[2]);
        let x = random_point(&mut r, a, 10.0);

        let fg = compose(&f, &g).expect("composable");
        let y = x.clone();
        let gy = g.realize(&h.realize(&y).expect("shape")).expect("shape");
        let hy = h.realize(&y).expect("shape");
        checks[0].record(rel(&fg.realize(&hy).expect("shape"), &f.realize(&gy).expect("shape")));

        let left = compose(&fg, &h).expect("composable");
        let right = compose(&f, &compose(&g, &h).expect("composable")).expect("composable");
        checks[1].record(layer_distance(&left, &right));

        let cat = concat_with_identity(&f, &g).expect("composable");
        checks[2].record(rel(&cat.realize(&hy).expect("shape"), &fg.realize(&hy).expect("shape")));
        checks[3].record((cat.length() as f64 - (f.length() + g.length()) as f64).abs());

        let id = identity_net(a);
        checks[4].record(rel(&id.realize(&x).expect("shape"), &x));

        let dims = fg.dims();
        let formula: u64 = dims.windows(2).map(|w| (w[1] * (w[0] + 1)) as u64).sum();
        checks[5].record((fg.param_count() as f64 - formula as f64).abs());

        let f2 = random_net(&mut r, c, d, lens[0]);
        let (wa, wb) = (2.0 * r.uniform() - 1.0, 2.0 * r.uniform() - 1.0);
        let avg = average_nets(&[f.clone(), f2.clone()], &[wa, wb]).expect("averageable");
        let z = random_point(&mut r, c, 10.0);
        let direct: Vec<f64> = f
            .realize(&z)
            .expect("shape")
            .iter()
            .zip(f2.realize(&z).expect("shape"))
            .map(|(p, q)| wa * p + wb * q)
            .collect();
        checks[6].record(rel(&avg.realize(&z).expect("shape"), &direct));
    }
    checks.iter().map(|c| (c.name, c.failures, c.max_error, c.tolerance)).collect()
}

pub fn study_calculus(seed: u64) -> Table {
    let mut t = Table::new(&["check", "instances", "failures", "max_error", "tolerance", "pass"]);
    let n = 500;
    for (name, failures, max_error, tol) in calculus_checks(n, seed) {
        t.push(vec![name.into(), n.to_string(), failures.to_string(), num(max_error), num(tol), (failures == 0).to_string()]);
    }
    t
}

// --------------------------------------------------------------- bounds

/// Gaussian samples `N(0, I_d)` from a per-sample stream.
fn gaussian(seed: u64, k: u64, d: usize) -> Vec<f64> {
    let mut r = rng(seed, 2, k);
    (0..d).map(|_| r.normal()).collect()
}

/// Empirical `L^2(nu x P)` error of the Monte Carlo Euler average for the
/// heat problem, over `omegas` independent noise draws with `points`
/// evaluation points each.
pub fn heat_mc_lp_error(p: &PdeProblem, budget: &Budget, omegas: usize, points: usize, seed: u64) -> Estimate {
    let measure = p.measure();
    let exact = |t: f64, x: &[f64]| kolmonet_core::reference::heat_relu_exact(t, x);
    let sq: Vec<f64> = (0..(omegas * points) as u64)
        .into_par_iter()
        .map(|k| {
            let w = k / points as u64;
            let noise = sample_noise(p, budget, seed.wrapping_add(w)).expect("noise");
            let (t, x) = measure.sample(seed, k);
            let mc = mc_euler_average(p, &noise, t, &x).expect("average");
            (mc - exact(t, &x)).powi(2)
        })
        .collect();
    Estimate::from_samples(&sq).root(2.0)
}

/// Point where `empirical / bound` is largest, as `(empirical, bound)`.
fn worst_ratio(pairs: impl Iterator<Item = (f64, f64)>) -> (f64, f64) {
    pairs.fold((0.0, 1.0), |best, (e, b)| if e * best.1 > best.0 * b { (e, b) } else { best })
}

pub fn study_bounds(seed: u64) -> Table {
    let mut t = Table::new(&["bound_name", "label", "inputs", "value", "empirical", "slack", "pass"]);
    let mut row = |name: &str, label: &str, inputs: String, value: f64, emp: Option<Estimate>| {
        let (emp_s, slack, pass) = match emp {
            Some(e) => (num(e.mean), num(value - e.mean), dominated(&e, value).to_string()),
            None => (String::new(), String::new(), "true".into()),
        };
        t.push(vec![name.into(), label.into(), inputs, num(value), emp_s, slack, pass]);
    };

    // Gaussian moment, X ~ N(0, I_2), p = 4
    let vals: Vec<f64> = (0..200_000u64).into_par_iter().map(|k| norm(&gaussian(seed, k, 2)).powi(4)).collect();
    row(
        "gaussian_moment_bound",
        "Lp norm of a centered Gaussian vector",
        "p=4;trace=2".into(),
        bounds::gaussian_moment_bound(4.0, 2.0),
        Some(Estimate::from_samples(&vals).root(4.0)),
    );

    // a-priori moment bound on the OU problem, d = 2
    let ou2 = ou_linear_problem(2);
    let m = euler_moments(&ou2, 16, 4000, 4.0, seed);
    row("apriori_sde_bound", "Euler moment bound", "problem=ou_linear;d=2;N=16;q=4".into(), m.bound, Some(m.moment));

    row("varpi", "Gaussian moment constant", "q=2;trace=4".into(), bounds::varpi(2.0, 4.0), None);

    let e = strong_interpolation(8, 20_000, 16, seed);
    row(
        "interp_error_bound",
        "interpolated vs continuous Euler scheme",
        "p=2;h=0.125;trace=1".into(),
        bounds::interp_error_bound(2.0, 0.125, 1.0),
        Some(e),
    );

    let gap = ou_weak_gap(0.8, 8);
    row(
        "weak_error_bound",
        "weak error of the Euler scheme",
        "problem=ou_linear;d=1;x=0.8;N=8".into(),
        bounds::weak_error_bound(&ou_weak_params(), 0.8, 0.0, 0.125).expect("conjugate"),
        Some(Estimate { mean: gap, std_error: 0.0, samples: 1 }),
    );

    let p11 = RegularityParams::new(1.0, 1.0, 1.0, 2.0).expect("params");
    row("mc_lp_constant", "Monte Carlo Euler Lp constant", "kappa=1;eta=1;p=2;T=1".into(), bounds::mc_lp_constants(&p11).total(), None);

    let heat = heat_relu_problem(1);
    let budget = Budget::new(16, 16, 1.0).expect("budget");
    let e = heat_mc_lp_error(&heat.problem, &budget, 8, 250, seed);
    row(
        "mc_lp_error_bound",
        "Monte Carlo Euler Lp error",
        "problem=heat_relu;d=1;N=16;M=16".into(),
        bounds::mc_lp_error_bound(&heat.problem.params, 1, 16.0, 16.0, 1.0),
        Some(e),
    );

    let (prod, _) = growth_product_net(2f64.powi(-8), 3.0).expect("product");
    row(
        "frak_d",
        "product network size budget",
        "eps=2^-8;q=3".into(),
        bounds::frak_d(2f64.powi(-8), 3.0),
        Some(Estimate { mean: prod.param_count() as f64, std_error: 0.0, samples: 1 }),
    );

    // Euler emulation on one OU path, d = 2
    let grid = TimeGrid::uniform(1.0, 4).expect("grid");
    let delta = 2f64.powi(-6);
    let inc = path_increments(seed, 0, &grid, &ou2.problem.diffusion());
    let en = build_euler_net(&ou2.problem.drift, &inc, &grid, delta).expect("euler net");
    let pairs: Vec<(f64, f64)> = (0..500u64)
        .map(|k| {
            let mut r = rng(seed, 3, k);
            let tt = r.uniform();
            let x = random_point(&mut r, 2, 1.0);
            let exact = euler_grid(&x, &ou2.problem.drift, &grid, &inc).expect("scheme").interpolate(tt).expect("time");
            let mut input = vec![tt];
            input.extend_from_slice(&x);
            let got = en.net.realize(&input).expect("shape");
            let diff: Vec<f64> = got.iter().zip(&exact).map(|(a, b)| a - b).collect();
            let g = path_envelope(&ou2.problem.drift_growth, &grid, &x, &inc);
            let n = step_index(&grid, tt);
            (norm(&diff), bounds::euler_emulation_error_bound(delta, 2, 3.0, g[n], g[n + 1]))
        })
        .collect();
    let (emp, bound) = worst_ratio(pairs.into_iter());
    row(
        "euler_emulation_error_bound",
        "network vs interpolated Euler scheme, worst point",
        "problem=ou_linear;d=2;N=4;delta=2^-6".into(),
        bound,
        Some(Estimate { mean: emp, std_error: 0.0, samples: 1 }),
    );

    // Monte Carlo sum network on the heat problem, d = 1
    let b4 = Budget::new(4, 4, delta).expect("budget");
    let noise = sample_noise(&heat.problem, &b4, seed).expect("noise");
    let net = crate::parallel::build_mc_average_net(&heat.problem, &b4, &noise).expect("network");
    let pairs: Vec<(f64, f64)> = (0..500u64)
        .map(|k| {
            let mut r = rng(seed, 4, k);
            let tt = r.uniform();
            let x = random_point(&mut r, 1, 1.0);
            let direct = mc_euler_average(&heat.problem, &noise, tt, &x).expect("average");
            let got = net.realize_scalar(&[tt, x[0]]).expect("shape");
            ((got - direct).abs(), mc_sum_bound_at(&heat.problem, &noise, delta, &x))
        })
        .collect();
    let (emp, bound) = worst_ratio(pairs.into_iter());
    row(
        "mc_sum_error_bound",
        "averaged network vs direct Monte Carlo average, worst point",
        "problem=heat_relu;d=1;N=4;M=4;delta=2^-6".into(),
        bound,
        Some(Estimate { mean: emp, std_error: 0.0, samples: 1 }),
    );

    let b2 = Budget::new(2, 2, 0.5).expect("budget");
    let sol = crate::parallel::solve(&heat.problem, 1.0, seed, Some(b2)).expect("solution");
    row(
        "dnn_param_bound",
        "size of the built network",
        "problem=heat_relu;d=1;N=2;M=2;delta=0.5".into(),
        bounds::dnn_param_bound(&heat.problem.params, 1, 2, 2, 0.5),
        Some(Estimate { mean: sol.net.param_count() as f64, std_error: 0.0, samples: 1 }),
    );

    // Gronwall moments: nu uniform on [0,1] x [-1,1], M_n = |W_{n/16}|
    let steps = 16u64;
    let hh: Vec<(f64, f64)> = (0..50_000u64)
        .into_par_iter()
        .map(|k| {
            let mut r = rng(seed, 5, k);
            let x = 2.0 * r.uniform() - 1.0;
            let (mut w, mut wmax) = (0.0f64, 0.0f64);
            for _ in 0..steps {
                w += r.normal() / (steps as f64).sqrt();
                wmax = wmax.max(w.abs());
            }
            let base = x.abs() + wmax;
            let (h2, h3) = (1.0 + base.powi(2), 1.0 + base.powi(3));
            (h2 * h2, (h2 * h3).powi(2))
        })
        .collect();
    let e1 = Estimate::from_samples(&hh.iter().map(|v| v.0).collect::<Vec<_>>()).root(2.0);
    let e2 = Estimate::from_samples(&hh.iter().map(|v| v.1).collect::<Vec<_>>()).root(2.0);
    row(
        "gronwall_moment_bound",
        "Lq norm of h_r",
        "r=2;q=2;c=0;C=0".into(),
        bounds::gronwall_moment_bound(2.0, 2.0, 0.0, 0.0, 1.0, 3f64.powf(0.25), 1.0).expect("domain"),
        Some(e1),
    );
    row(
        "gronwall_product_bound",
        "Lp norm of h_2^alpha h_3",
        "alpha=1;p=2;c=0;C=0".into(),
        bounds::gronwall_product_bound(1.0, 2.0, 0.0, 0.0, 1.0, 10395f64.powf(1.0 / 12.0), 1.0).expect("domain"),
        Some(e2),
    );

    let plan = bounds::plan_budget(&p11, 10, 0.1).expect("plan");
    row("plan_log10_steps", "planned Euler steps (log10)", "kappa=1;eta=1;d=10;eps=0.1".into(), plan.steps.log10(), None);
    t
}

pub fn run(kind: &str, seed: u64) -> Option<Table> {
    match kind {
        "euler" => Some(study_euler(seed)),
        "weak" => Some(study_weak(seed)),
        "calculus" => Some(study_calculus(seed)),
        "bounds" => Some(study_bounds(seed)),
        _ => None,
    }
}
