//! Closed-form constants, error bounds, size bounds and budget planning.
//!
//! Large constants are assembled in natural-log space; `f64` accessors
//! return `+inf` when a value is not representable.

use alloc::vec::Vec;
use core::f64::consts::LN_2;
use core::fmt;

use crate::math::{ceil, exp, ln, log10, log2, powf, sqrt};

#[derive(Clone, Debug, PartialEq)]
pub enum BoundsError {
    InvalidArgument(&'static str),
    /// The exponents `p` and `q` are not conjugate.
    NotConjugate { p: f64, q: f64 },
}

impl fmt::Display for BoundsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundsError::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            BoundsError::NotConjugate { p, q } => write!(f, "1/p + 1/q != 1 for p = {p}, q = {q}"),
        }
    }
}

impl core::error::Error for BoundsError {}

type Result<T> = core::result::Result<T, BoundsError>;

/// Horizon `T`, regularity constant `kappa`, moment constant `eta` and
/// integrability exponent `p` of a problem family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegularityParams {
    pub horizon: f64,
    pub kappa: f64,
    pub eta: f64,
    pub p: f64,
}

impl RegularityParams {
    pub fn new(horizon: f64, kappa: f64, eta: f64, p: f64) -> Result<Self> {
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(BoundsError::InvalidArgument("T must be positive and finite"));
        }
        if !(kappa > 0.0 && kappa.is_finite()) {
            return Err(BoundsError::InvalidArgument("kappa must be positive and finite"));
        }
        if !(eta >= 1.0 && eta.is_finite()) {
            return Err(BoundsError::InvalidArgument("eta must be at least 1"));
        }
        if !(p >= 2.0 && p.is_finite()) {
            return Err(BoundsError::InvalidArgument("p must be at least 2"));
        }
        Ok(RegularityParams { horizon, kappa, eta, p })
    }
}

/// Euler steps `N`, Monte Carlo samples `M` and product accuracy `delta`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    pub steps: usize,
    pub samples: usize,
    pub delta: f64,
}

impl Budget {
    pub fn new(steps: usize, samples: usize, delta: f64) -> Result<Self> {
        if steps == 0 || samples == 0 {
            return Err(BoundsError::InvalidArgument("N and M must be at least 1"));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(BoundsError::InvalidArgument("delta must lie in (0, 1]"));
        }
        Ok(Budget { steps, samples, delta })
    }
}

/// `ln(e^a + e^b)`.
fn ln_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + libm::log1p(exp(lo - hi))
}

/// `sqrt(max(1, p - 1) * trace)`.
pub fn gaussian_moment_bound(p: f64, cov_trace: f64) -> f64 {
    sqrt((p - 1.0).max(1.0) * cov_trace)
}

/// `(|x| + C T + beta) e^(c T)`.
pub fn apriori_sde_bound(x_norm: f64, big_c: f64, c: f64, horizon: f64, beta_sup: f64) -> f64 {
    (x_norm + big_c * horizon + beta_sup) * exp(c * horizon)
}

/// `max(1, sqrt(max(1, r - 1) * trace))`.
pub fn varpi(r: f64, trace_bstar_b: f64) -> f64 {
    gaussian_moment_bound(r, trace_bstar_b).max(1.0)
}

/// `sqrt(max(1, p - 1) h trace) / 2`, the `L^p` gap between the linearly
/// interpolated and the continuous-time Euler scheme.
pub fn interp_error_bound(p: f64, h: f64, trace_bbstar: f64) -> f64 {
    0.5 * sqrt((p - 1.0).max(1.0) * h * trace_bbstar)
}

/// Inputs of the weak error estimate for a perturbed Euler scheme.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakErrorParams {
    pub horizon: f64,
    /// Lipschitz constant of the perturbed test function.
    pub l0: f64,
    /// Lipschitz constant of the exact drift.
    pub l1: f64,
    /// Growth exponent in the test function's Lipschitz estimate.
    pub ell: f64,
    pub sigma0: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub eps0: f64,
    pub eps1: f64,
    pub eps2: f64,
    /// Linear growth `|g1(x)| <= C + c |x|` of the perturbed drift.
    pub c: f64,
    pub big_c: f64,
    pub p: f64,
    pub q: f64,
    pub trace_bstar_b: f64,
}

/// Upper bound for `|E f0(X_t) - E g0(Y_t)|` where `Y` is an Euler scheme
/// with step `h` and perturbed coefficients.
pub fn weak_error_bound(w: &WeakErrorParams, xi_norm: f64, f1_at_0_norm: f64, h: f64) -> Result<f64> {
    if !(w.p >= 2.0) || !(w.q > 1.0 && w.q <= 2.0) {
        return Err(BoundsError::InvalidArgument("need p >= 2 and q in (1, 2]"));
    }
    if (1.0 / w.p + 1.0 / w.q - 1.0).abs() > 1e-12 {
        return Err(BoundsError::NotConjugate { p: w.p, q: w.q });
    }
    if !(w.horizon > 0.0) || !(h >= 0.0) {
        return Err(BoundsError::InvalidArgument("need T > 0 and h >= 0"));
    }
    let (s0, s1, s2) = (w.sigma0, w.sigma1, w.sigma2);
    let pert = w.eps2 * (1.0 + powf(xi_norm, s2));
    let sources = pert + w.eps0 + w.eps1 + h + sqrt(h);
    if sources == 0.0 {
        return Ok(0.0);
    }
    let rate = s0.max(1.0) * w.l1 + 1.0 - 1.0 / w.p + w.ell * w.l1.max(w.c) + s1.max(1.0) * w.c;
    let vp_index = s0.max(w.ell * w.q).max(w.p * s1).max(w.p);
    let vp_exp = s0.max(w.ell + s1.max(1.0));
    let t_exp = s0.max(w.ell + s1.max(1.0) + 1.0 / w.p);
    let tail = w.big_c.max(1.0)
        + 5.0
            * w.big_c.max(w.c).max(1.0)
            * powf(xi_norm + pert + 2.0 * f1_at_0_norm.max(w.big_c).max(1.0), vp_exp);
    Ok(sources
        * exp(rate * w.horizon)
        * powf(varpi(vp_index, w.trace_bstar_b), vp_exp)
        * powf(w.horizon.max(1.0), t_exp)
        * w.l0.max(1.0)
        * w.l1.max(1.0)
        * powf(2.0, (w.ell - 1.0).max(0.0))
        * tail)
}

/// Constants `C`, `C1`, `C2` and `C = max(C1 + C2, 8 kappa (1 + C) sqrt(p - 1))`
/// of the Monte Carlo Euler `L^p` estimate, stored as natural logarithms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McLpConstants {
    pub ln_moment: f64,
    pub ln_c1: f64,
    pub ln_c2: f64,
    pub ln_total: f64,
}

impl McLpConstants {
    pub fn moment(&self) -> f64 {
        exp(self.ln_moment)
    }

    pub fn c1(&self) -> f64 {
        exp(self.ln_c1)
    }

    pub fn c2(&self) -> f64 {
        exp(self.ln_c2)
    }

    pub fn total(&self) -> f64 {
        exp(self.ln_total)
    }
}

pub fn mc_lp_constants(params: &RegularityParams) -> McLpConstants {
    let RegularityParams { horizon: t, kappa: k, eta, p } = *params;
    let iota = k.max(1.0);
    let tm = t.max(1.0);
    let root = sqrt(2.0 * (2.0 * k - 1.0).max(1.0) * k).max(1.0);

    let base = k * t + sqrt(2.0 * (p * iota - 1.0) * k).max(1.0) * sqrt(t);
    let ln_moment = k * k * t + (k - 1.0).max(0.0) * LN_2 + ln_add(ln(eta), k * ln(base));

    let e = k + iota - 1.0;
    let ln_bracket = ln_add(ln_add(0.0, ln(5.0 * eta) + e * LN_2), ln(5.0) + (k + iota) * ln(4.0 * iota) + e * LN_2);
    let ln_c1 = 2.0 * ln(iota)
        + iota * LN_2
        + ln(k + 1.0)
        + 2.0 * iota * ln(root)
        + (3.0 * iota * iota + 0.5) * t
        + (k + iota + 1.5) * ln(tm)
        + ln((2.0 * k * (k + 1.0)).max(1.0))
        + ln_bracket;

    let ln_c2 = -0.5 * LN_2
        + 1.5 * ln(k)
        + k * k * t
        + iota * LN_2
        + (k + 0.5) * ln(tm)
        + ln_add(ln(eta + 1.0), k * ln(k + root));

    let ln_total = ln_add(ln_c1, ln_c2).max(ln(8.0 * k * sqrt(p - 1.0)) + ln_add(0.0, ln_moment));
    McLpConstants { ln_moment, ln_c1, ln_c2, ln_total }
}

/// Dimension exponents of the Euler, Monte Carlo and product terms.
fn exponents(k: f64, eta: f64) -> (f64, f64, f64) {
    (
        k * (k + 4.0) + eta.max(k * (2.0 * k + 1.0)),
        k + eta.max(k * k),
        (2.0 * k + 3.0) * eta.max(k) + k * k + (7.0 * k + 1.0) / 2.0,
    )
}

/// `C [d^a / sqrt(N) + d^b / sqrt(M)] max(1, mass)^(1/p)`; `N` and `M` may be
/// `f64::INFINITY`.
pub fn mc_lp_error_bound(params: &RegularityParams, d: usize, n: f64, m: f64, mass: f64) -> f64 {
    let c = mc_lp_constants(params);
    let (a, b, _) = exponents(params.kappa, params.eta);
    let df = d as f64;
    let terms = powf(df, a) / sqrt(n) + powf(df, b) / sqrt(m);
    c.total() * terms * powf(mass.max(1.0), 1.0 / params.p)
}

/// Size budget `[720 q / (q - 2)] [log2(1/eps) + q + 1] - 504` of a product
/// sub-network.
pub fn frak_d(eps: f64, q: f64) -> f64 {
    720.0 * q / (q - 2.0) * (log2(1.0 / eps) + q + 1.0) - 504.0
}

/// The `q = 3` specialization `2160 [log2(1/eps) + 4] - 504`.
pub fn frak_d_q3(eps: f64) -> f64 {
    2160.0 * (log2(1.0 / eps) + 4.0) - 504.0
}

/// Envelopes `g_n = [|x| + C tau_n + max_{m<=n} |y_1 + ... + y_m|] e^(c tau_n)`
/// for `n = 0..=N`, with `increments` holding `y_1..y_N` back to back.
pub fn growth_envelope(x_norm: f64, big_c: f64, c: f64, horizon: f64, dim: usize, increments: &[f64]) -> Vec<f64> {
    let steps = increments.len() / dim;
    let mut out = Vec::with_capacity(steps + 1);
    let mut sum = alloc::vec![0.0; dim];
    let mut running_max = 0.0f64;
    for n in 0..=steps {
        if n > 0 {
            for i in 0..dim {
                sum[i] += increments[(n - 1) * dim + i];
            }
            running_max = running_max.max(crate::math::norm(&sum));
        }
        let tau = n as f64 * horizon / steps.max(1) as f64;
        out.push((x_norm + big_c * tau + running_max) * exp(c * tau));
    }
    out
}

/// `eps [2 sqrt(d) + g_n^q + g_{n+1}^q]`.
pub fn euler_emulation_error_bound(eps: f64, d: usize, q: f64, g_n: f64, g_n1: f64) -> f64 {
    eps * (2.0 * sqrt(d as f64) + powf(g_n, q) + powf(g_n1, q))
}

/// `6 sqrt(d) + 2 [g_n^2 + g_{n+1}^2]`.
pub fn euler_emulation_growth_bound(d: usize, g_n: f64, g_n1: f64) -> f64 {
    6.0 * sqrt(d as f64) + 2.0 * (g_n * g_n + g_n1 * g_n1)
}

/// `(9/2) N^6 d^16 [2 (L - 1) + D + (24 + 6 L + (4 + P)^2)^2]^2` for a drift
/// network of length `L` and size `P`.
pub fn euler_emulation_param_bound(n: usize, d: usize, drift_len: usize, drift_params: u64, frak: f64) -> f64 {
    let (l, p) = (drift_len as f64, drift_params as f64);
    let inner = 24.0 + 6.0 * l + (4.0 + p) * (4.0 + p);
    let bracket = 2.0 * (l - 1.0) + frak + inner * inner;
    4.5 * powf(n as f64, 6.0) * powf(d as f64, 16.0) * bracket * bracket
}

/// `h_{m,r} = 1 + [|x| + C T + max_n |W_n|]^r e^(r c T)`.
pub fn mc_sum_aux(x_norm: f64, big_c: f64, c: f64, horizon: f64, max_w_norm: f64, r: f64) -> f64 {
    1.0 + powf(x_norm + big_c * horizon + max_w_norm, r) * exp(r * c * horizon)
}

/// `(2 eps frakC sqrt(d) / M) sum_m [1 + 2 d^(alpha/2) 6^alpha h_{m,2}^alpha] h_{m,q}`
/// with `M` the length of the lists.
pub fn mc_sum_error_bound(eps: f64, d: usize, alpha: f64, frak_c: f64, h2: &[f64], hq: &[f64]) -> f64 {
    let m = h2.len().min(hq.len());
    if m == 0 {
        return 0.0;
    }
    let df = d as f64;
    let lead = 2.0 * powf(df, alpha / 2.0) * powf(6.0, alpha);
    let mut terms = Vec::with_capacity(m);
    for j in 0..m {
        terms.push((1.0 + lead * powf(h2[j], alpha)) * hq[j]);
    }
    2.0 * eps * frak_c * sqrt(df) / m as f64 * crate::stats::pairwise_sum(&terms)
}

/// `2 M^2 P(g) + 9 M^2 N^6 d^16 [2 L(f) + D + (24 + 6 L(f) + (4 + P(f))^2)^2]^2`.
pub fn mc_sum_param_bound(m: usize, n: usize, d: usize, init_params: u64, drift_len: usize, drift_params: u64, frak: f64) -> f64 {
    let (l, p) = (drift_len as f64, drift_params as f64);
    let inner = 24.0 + 6.0 * l + (4.0 + p) * (4.0 + p);
    let bracket = 2.0 * l + frak + inner * inner;
    let mf = m as f64;
    2.0 * mf * mf * init_params as f64 + 9.0 * mf * mf * powf(n as f64, 6.0) * powf(d as f64, 16.0) * bracket * bracket
}

/// The three constants of the network error estimate, as natural logs:
/// the product-error constant, the size constant and the Monte Carlo
/// Euler constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DnnConstants {
    pub ln_c1: f64,
    pub ln_c2: f64,
    pub ln_c3: f64,
}

impl DnnConstants {
    pub fn c1(&self) -> f64 {
        exp(self.ln_c1)
    }

    pub fn c2(&self) -> f64 {
        exp(self.ln_c2)
    }

    pub fn c3(&self) -> f64 {
        exp(self.ln_c3)
    }

    /// `ln max(C1, C3)`, the constant of the error estimate.
    pub fn ln_error(&self) -> f64 {
        self.ln_c1.max(self.ln_c3)
    }

    /// `ln max(C1, C2, C3)`, one constant serving both estimates.
    pub fn ln_combined(&self) -> f64 {
        self.ln_error().max(self.ln_c2)
    }
}

pub fn dnn_constants(params: &RegularityParams) -> DnnConstants {
    let RegularityParams { horizon: t, kappa: k, eta, p } = *params;
    let e = 2.0 * k + 3.0;
    let ln_c1 = e * ln(2.0 * p * eta.max(k) * t.max(1.0) * k.max(1.0))
        + e * ln(1.0 + sqrt(2.0 * k))
        + ln(k)
        + e * k * t
        + (2.0 * k + 4.0) * LN_2
        + k * ln(3.0);
    let ln_c2 = 57.0 * LN_2 + 8.0 * ln(k.max(1.0)) + 8.0 * ln(powf(t, -k / 2.0).max(1.0));
    DnnConstants { ln_c1, ln_c2, ln_c3: mc_lp_constants(params).ln_total }
}

/// Error bound of a built network for budget `(N, M, delta)` against the
/// exact solution in `L^p` of a measure of total mass `mass`.
pub fn dnn_error_bound(params: &RegularityParams, d: usize, n: f64, m: f64, delta: f64, mass: f64) -> f64 {
    let (a, b, c) = exponents(params.kappa, params.eta);
    let df = d as f64;
    let terms = powf(df, a) / sqrt(n) + powf(df, b) / sqrt(m) + delta * powf(df, c);
    exp(dnn_constants(params).ln_error()) * powf(mass.max(1.0), 1.0 / params.p) * terms
}

/// `C2 M^2 N^(6 + 4 kappa) [log2(1/delta) + 1]^2 d^(16 + 8 kappa)`.
pub fn dnn_param_bound(params: &RegularityParams, d: usize, n: usize, m: usize, delta: f64) -> f64 {
    exp(dnn_param_bound_ln(params, d, n, m, delta))
}

/// Natural log of [`dnn_param_bound`].
pub fn dnn_param_bound_ln(params: &RegularityParams, d: usize, n: usize, m: usize, delta: f64) -> f64 {
    let k = params.kappa;
    dnn_constants(params).ln_c2
        + 2.0 * ln(m as f64)
        + (6.0 + 4.0 * k) * ln(n as f64)
        + 2.0 * ln(log2(1.0 / delta) + 1.0)
        + (16.0 + 8.0 * k) * ln(d as f64)
}

/// A quantity that is either a plain value or, when not representable,
/// its base-10 logarithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Magnitude {
    Value(f64),
    Log10(f64),
}

impl Magnitude {
    pub fn log10(&self) -> f64 {
        match *self {
            Magnitude::Value(v) => log10(v),
            Magnitude::Log10(l) => l,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match *self {
            Magnitude::Value(v) => Some(v),
            Magnitude::Log10(_) => None,
        }
    }

    fn from_log10(l: f64, limit: f64) -> Self {
        if l.abs() <= limit {
            Magnitude::Value(powf(10.0, l))
        } else {
            Magnitude::Log10(l)
        }
    }

    /// Smallest integer at least `10^l`, if it fits in 15 digits.
    fn ceil_from_log10(l: f64) -> Self {
        if l <= 15.0 {
            Magnitude::Value(ceil(powf(10.0, l) * (1.0 - 1e-15)).max(1.0))
        } else {
            Magnitude::Log10(l)
        }
    }
}

/// A budget `(N, M, delta)` reaching accuracy `eps`, with its guaranteed
/// network size `frakC eps^-(18 + 8 kappa) d^c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Plan {
    pub steps: Magnitude,
    pub samples: Magnitude,
    pub delta: Magnitude,
    pub cost_constant: Magnitude,
    pub cost: Magnitude,
    pub cost_exponent: f64,
}

impl Plan {
    /// The budget, when every component is representable.
    pub fn budget(&self) -> Option<Budget> {
        let n = self.steps.value()?;
        let m = self.samples.value()?;
        let delta = self.delta.value()?;
        if n > usize::MAX as f64 || m > usize::MAX as f64 {
            return None;
        }
        Budget::new(n as usize, m as usize, delta).ok()
    }
}

/// Dimension exponent of the guaranteed network size.
pub fn cost_exponent(kappa: f64, eta: f64) -> f64 {
    let k = kappa;
    18.0 + 12.0 * k
        + 4.0 * eta.max(k * k)
        + 4.0 * eta
        + (2.0 * k * (k + 4.0) + 2.0 * eta.max(k * (2.0 * k + 1.0)) + 2.0 * eta) * (6.0 + 4.0 * k)
}

/// Budget for accuracy `eps` at dimension `d`. The estimate constant is
/// `max(C1, C2, C3)` of [`dnn_constants`].
pub fn plan_budget(params: &RegularityParams, d: usize, eps: f64) -> Result<Plan> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(BoundsError::InvalidArgument("eps must lie in (0, 1]"));
    }
    if d == 0 {
        return Err(BoundsError::InvalidArgument("d must be at least 1"));
    }
    let (k, eta) = (params.kappa, params.eta);
    let l10 = log10;
    let ln_to_l10 = 1.0 / core::f64::consts::LN_10;
    let ln_k = dnn_constants(params).ln_combined();
    // log10 of 3 C eta
    let lk = l10(3.0) + ln_k * ln_to_l10 + l10(eta);
    let (ld, leps) = (l10(d as f64), l10(eps));
    let e_n = 2.0 * k * (k + 4.0) + 2.0 * eta.max(k * (2.0 * k + 1.0)) + 2.0 * eta;
    let e_m = 2.0 * k + 2.0 * eta.max(k * k) + 2.0 * eta;
    let e_delta = 2.0 * (k + 2.0) * eta.max(k) + k * k + (7.0 * k + 1.0) / 2.0;

    let steps = Magnitude::ceil_from_log10(2.0 * lk - 2.0 * leps + e_n * ld);
    let samples = Magnitude::ceil_from_log10(2.0 * lk - 2.0 * leps + e_m * ld);
    let delta = Magnitude::from_log10((-lk + leps - e_delta * ld).min(0.0), 300.0);

    let lc2 = (lk * core::f64::consts::LN_10 / LN_2).max(0.0) + 1.0 / LN_2 + e_delta / LN_2;
    let cost_constant_l10 = ln_k * ln_to_l10 + (8.0 + 4.0 * k) * l10(2.0) + (16.0 + 8.0 * k) * lk + 2.0 * l10(lc2 + 1.0);
    let c = cost_exponent(k, eta);
    let cost_l10 = cost_constant_l10 - (18.0 + 8.0 * k) * leps + c * ld;
    Ok(Plan {
        steps,
        samples,
        delta,
        cost_constant: Magnitude::from_log10(cost_constant_l10, 300.0),
        cost: Magnitude::from_log10(cost_l10, 300.0),
        cost_exponent: c,
    })
}

/// Item (i) of the Gronwall moment estimate:
/// `2 e^(r c) max(2^(1/q - 1), 1) [K + C + qr/(qr - 1) |M_N|_{qr}]^r max(1, mass^(1/q))`.
#[allow(clippy::too_many_arguments)]
pub fn gronwall_moment_bound(r: f64, q: f64, c: f64, big_c: f64, moment_const: f64, mart_qr_norm: f64, mass: f64) -> Result<f64> {
    if !(r > 0.0 && q > 0.0 && q * r > 1.0) {
        return Err(BoundsError::InvalidArgument("need r, q > 0 and q r > 1"));
    }
    let qr = q * r;
    Ok(2.0
        * exp(r * c)
        * powf(2.0, 1.0 / q - 1.0).max(1.0)
        * powf(moment_const + big_c + qr / (qr - 1.0) * mart_qr_norm, r)
        * powf(mass, 1.0 / q).max(1.0))
}

/// Item (ii) of the Gronwall moment estimate, for `h_2^alpha h_3` in `L^p`:
/// `[K + C + Q/(Q - 1) |M_N|_Q]^(2 alpha + 3) 2^(alpha + 1) e^((2 alpha + 3) c) max(1, mass^(1/p))`
/// with `Q = max(4 p alpha, 6 p)`.
pub fn gronwall_product_bound(alpha: f64, p: f64, c: f64, big_c: f64, moment_const: f64, mart_norm: f64, mass: f64) -> Result<f64> {
    if !(p > 1.0 && alpha >= 0.0) {
        return Err(BoundsError::InvalidArgument("need p > 1 and alpha >= 0"));
    }
    let big_q = (4.0 * p * alpha).max(6.0 * p);
    let e = 2.0 * alpha + 3.0;
    Ok(powf(moment_const + big_c + big_q / (big_q - 1.0) * mart_norm, e)
        * powf(2.0, alpha + 1.0)
        * exp(e * c)
        * powf(mass, 1.0 / p).max(1.0))
}

/// Regularity constant `max(3 kappa, kappa + 1)` used when the coefficient
/// assumptions are stated with exponent `kappa` on the unapproximated side.
pub fn corollary_kappa(kappa: f64) -> f64 {
    (3.0 * kappa).max(kappa + 1.0)
}

/// Regularity constant `max(3 kappa, 2 (kappa + 1))` of the heat-equation
/// specialization.
pub fn laplace_kappa(kappa: f64) -> f64 {
    (3.0 * kappa).max(2.0 * (kappa + 1.0))
}

/// Moment data for a normalized Lebesgue measure on `[0, T] x [alpha, beta]^d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LebesgueParams {
    pub q: f64,
    pub eta: f64,
    /// Factor `max(T, 1)^(1/q - 1/p)` mapping a target accuracy to the
    /// accuracy requested from the `L^q` estimate.
    pub delta_scale: f64,
}

impl LebesgueParams {
    pub fn delta(&self, eps: f64) -> f64 {
        eps * self.delta_scale
    }
}

pub fn lebesgue_eta(horizon: f64, kappa: f64, p: f64, alpha: f64, beta: f64) -> Result<LebesgueParams> {
    if !(horizon > 0.0 && kappa > 0.0 && p > 0.0) || !(beta > alpha) {
        return Err(BoundsError::InvalidArgument("need T, kappa, p > 0 and beta > alpha"));
    }
    let q = p.max(2.0);
    let m = (6.0 * kappa).max(2.0 * kappa + 2.0).max(3.0);
    let tm = horizon.max(1.0);
    let eta = m + powf(tm, 1.0 / q) * powf(alpha.abs(), 2.0 * m).max(powf(beta.abs(), 2.0 * m)).max(1.0);
    Ok(LebesgueParams { q, eta, delta_scale: powf(tm, 1.0 / q - 1.0 / p) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_add_matches_direct() {
        assert!((ln_add(ln(2.0), ln(3.0)) - ln(5.0)).abs() < 1e-15);
        assert_eq!(ln_add(f64::NEG_INFINITY, 1.0), 1.0);
    }

    #[test]
    fn params_are_validated() {
        assert!(RegularityParams::new(1.0, 1.0, 1.0, 2.0).is_ok());
        assert!(RegularityParams::new(0.0, 1.0, 1.0, 2.0).is_err());
        assert!(RegularityParams::new(1.0, 1.0, 0.5, 2.0).is_err());
        assert!(RegularityParams::new(1.0, 1.0, 1.0, 1.5).is_err());
        assert!(Budget::new(1, 1, 0.0).is_err());
        assert!(Budget::new(0, 1, 0.5).is_err());
    }

    #[test]
    fn magnitude_switches_to_log() {
        assert_eq!(Magnitude::ceil_from_log10(2.0), Magnitude::Value(100.0));
        assert_eq!(Magnitude::ceil_from_log10(20.0), Magnitude::Log10(20.0));
    }
}
