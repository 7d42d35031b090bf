use alloc::vec;
use alloc::vec::Vec;

use super::ops::{affine_net, average_nets, compose};
use super::{zero_bias, CalcError, Layer, Matrix, Network};
use crate::math::{ceil, log2, powf};

/// Construction data of a square or product network.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductInfo {
    /// Number of sawtooth stages `m`.
    pub stages: u32,
    /// Clipping level `K` of the inner square networks.
    pub clip: f64,
    /// Radius on which the plain error bound holds.
    pub range: f64,
    /// Guaranteed error on that range.
    pub error: f64,
}

/// Scalar network approximating `min(|z|, k)^2` from above with error at
/// most `k^2 * 2^(-2 stages - 2)`; its value is always in
/// `[0, k^2 (1 + 2^(-2 stages - 2))]`.
///
/// Layout: `(relu(z), relu(-z))`, then `(|z|, relu(|z| - k))`, then one
/// block of three units per sawtooth stage, then a single unit holding the
/// approximate square, then the output.
pub fn square_net(stages: u32, k: f64) -> Network {
    assert!(k > 0.0 && k.is_finite(), "clip level must be positive");
    let mut layers = Vec::new();
    layers.push(layer(2, 1, &[1.0, -1.0], vec![0.0, 0.0]));
    layers.push(layer(2, 2, &[1.0, 1.0, 1.0, 1.0], vec![0.0, -k]));
    let k2 = k * k;
    if stages == 0 {
        layers.push(layer(1, 2, &[k, -k], vec![0.0]));
    } else {
        // u = (p - q) / k; units relu(u), relu(u - 1/2), relu(u)
        let ik = 1.0 / k;
        layers.push(layer(3, 2, &[ik, -ik, ik, -ik, ik, -ik], vec![0.0, -0.5, 0.0]));
        let mut pow4 = 1.0;
        for _ in 2..=stages {
            pow4 *= 4.0;
            let (a, b) = (-2.0 / pow4, 4.0 / pow4);
            layers.push(layer(
                3,
                3,
                &[2.0, -4.0, 0.0, 2.0, -4.0, 0.0, a, b, 1.0],
                vec![0.0, -0.5, 0.0],
            ));
        }
        pow4 *= 4.0;
        layers.push(layer(1, 3, &[-2.0 * k2 / pow4, 4.0 * k2 / pow4, k2], vec![0.0]));
    }
    layers.push(layer(1, 1, &[1.0], vec![0.0]));
    Network::new(layers).expect("square net shapes")
}

/// Product network on `R^2` with `|R(net)(a, b) - a b| <= eps` whenever
/// `|a|, |b| <= r`, and exact zero output when either factor is zero.
pub fn product_net(eps: f64, r: f64) -> Result<(Network, ProductInfo), CalcError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(CalcError::InvalidArgument("eps must lie in (0, 1]"));
    }
    if !(r >= 1.0 && r.is_finite()) {
        return Err(CalcError::InvalidArgument("range must be finite and at least 1"));
    }
    let k = 2.0 * r;
    // |error| <= k^2 2^(-2m-3) = r^2 2^(-2m-1); keep a factor 2 of headroom
    let stages = stages_for(k * k / 8.0, eps / 2.0);
    let net = polarized_product(stages, k)?;
    let error = k * k * powf(2.0, -(2.0 * stages as f64) - 3.0);
    Ok((net, ProductInfo { stages, clip: k, range: r, error }))
}

/// Product network for a first factor in `[0, 1]` and an unbounded second
/// factor: `|R(net)(a, b) - a b| <= eps * max(1, |b|^q)` for all
/// `a ∈ [0, 1]`, `b ∈ R`, with exact zeros when either factor is zero and
/// `|R(net)(a, b)| <= 3/2 + (5/8) b^2`.
///
/// The clip level is a power of two and the sawtooth nodes are spaced by a
/// divisor of 1, which makes the square-net error 1-periodic and even. Hence
/// `R(net)(a, b) + R(net)(1 - a, b) = b` and `R(net)(1, b) = b` up to
/// rounding for `a ∈ [0, 1]`, `|b| <= clip - 1`.
pub fn growth_product_net(eps: f64, q: f64) -> Result<(Network, ProductInfo), CalcError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(CalcError::InvalidArgument("eps must lie in (0, 1]"));
    }
    if !(q > 2.0 && q.is_finite()) {
        return Err(CalcError::InvalidArgument("growth exponent must exceed 2"));
    }
    let r = powf(3.0 / eps, 1.0 / (q - 2.0)).max(1.0);
    let log_k = ceil(log2(r + 1.0)).max(0.0);
    let k = powf(2.0, log_k);
    let stages = stages_for(k * k / 8.0, eps / 2.0).max(log_k as u32);
    let net = polarized_product(stages, k)?;
    let error = k * k * powf(2.0, -(2.0 * stages as f64) - 3.0);
    Ok((net, ProductInfo { stages, clip: k, range: r, error }))
}

/// Clipped ramp `t -> clamp((t - grid[n]) / (grid[n+1] - grid[n]), 0, 1)`
/// as a three-layer scalar network.
pub fn hat_time_net(grid: &[f64], n: usize) -> Result<Network, CalcError> {
    if n + 1 >= grid.len() {
        return Err(CalcError::InvalidArgument("grid index out of range"));
    }
    let h = grid[n + 1] - grid[n];
    if !(h > 0.0) {
        return Err(CalcError::InvalidArgument("degenerate grid interval"));
    }
    let w = 1.0 / h;
    Network::new(vec![
        layer(1, 1, &[w], vec![-grid[n] * w]),
        layer(1, 1, &[-1.0], vec![1.0]),
        layer(1, 1, &[-1.0], vec![1.0]),
    ])
}

/// Smallest `m >= 0` with `scale * 4^-m <= target`.
fn stages_for(scale: f64, target: f64) -> u32 {
    if scale <= target {
        return 0;
    }
    let mut m = ceil(log2(scale / target) / 2.0).max(0.0) as u32;
    while m > 0 && scale * powf(4.0, -(m as f64 - 1.0)) <= target {
        m -= 1;
    }
    while scale * powf(4.0, -(m as f64)) > target {
        m += 1;
    }
    m
}

/// `(a, b) -> (S(a + b) - S(a - b)) / 4` with `S = square_net(stages, k)`.
fn polarized_product(stages: u32, k: f64) -> Result<Network, CalcError> {
    let sq = square_net(stages, k);
    let plus = compose(&sq, &affine_net(Matrix::from_dense(1, 2, &[1.0, 1.0]), zero_bias(1))?)?;
    let minus = compose(&sq, &affine_net(Matrix::from_dense(1, 2, &[1.0, -1.0]), zero_bias(1))?)?;
    average_nets(&[plus, minus], &[0.25, -0.25])
}

fn layer(rows: usize, cols: usize, w: &[f64], b: Vec<f64>) -> Layer {
    Layer::new(Matrix::from_dense(rows, cols, w), b).expect("layer shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_count_is_minimal() {
        assert_eq!(stages_for(1.0, 1.0), 0);
        assert_eq!(stages_for(1.0, 0.25), 1);
        assert_eq!(stages_for(1.0, 0.2), 2);
        assert_eq!(stages_for(64.0, 1.0), 3);
    }

    #[test]
    fn square_net_at_nodes() {
        // with m stages the interpolant is exact at multiples of 2^-m
        let s = square_net(3, 1.0);
        for i in 0..=8 {
            let u = i as f64 / 8.0;
            let v = s.realize(&[u]).unwrap()[0];
            assert!((v - u * u).abs() < 1e-15, "u={u} v={v}");
        }
        // clipping
        assert!((s.realize(&[3.0]).unwrap()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_rejects_bad_eps() {
        assert!(product_net(0.0, 1.0).is_err());
        assert!(product_net(1.5, 1.0).is_err());
        assert!(product_net(0.5, 0.5).is_err());
        assert!(growth_product_net(0.5, 2.0).is_err());
    }

    #[test]
    fn hat_rejects_degenerate_grid() {
        assert!(hat_time_net(&[0.0, 0.0, 1.0], 0).is_err());
        assert!(hat_time_net(&[0.0, 1.0], 1).is_err());
    }
}
