use alloc::vec;
use alloc::vec::Vec;

use super::{zero_bias, CalcError, Layer, Matrix, Network};

/// Network of length one realizing `x -> W x + b`.
pub fn affine_net(weight: Matrix, bias: Vec<f64>) -> Result<Network, CalcError> {
    Network::new(vec![Layer::new(weight, bias)?])
}

/// Standard composition `f ∘ g`: the last layer of `g` is fused with the
/// first layer of `f`, so the length is `L(f) + L(g) - 1`.
pub fn compose(f: &Network, g: &Network) -> Result<Network, CalcError> {
    if f.in_dim() != g.out_dim() {
        return Err(CalcError::DimMismatch { expected: f.in_dim(), got: g.out_dim() });
    }
    let gl = g.layers();
    let fl = f.layers();
    let g_last = &gl[gl.len() - 1];
    let f_first = &fl[0];
    let w = f_first.weight().matmul(g_last.weight());
    let mut b = f_first.weight().mul_vec(g_last.bias());
    for (bi, fb) in b.iter_mut().zip(f_first.bias()) {
        *bi += *fb;
    }
    let mut layers = Vec::with_capacity(gl.len() + fl.len() - 1);
    layers.extend_from_slice(&gl[..gl.len() - 1]);
    layers.push(Layer::new(w, b)?);
    layers.extend_from_slice(&fl[1..]);
    Network::new(layers)
}

/// The two-layer identity with dims `(d, 2d, d)`: `x -> relu(x) - relu(-x)`.
pub fn identity_net(d: usize) -> Network {
    assert!(d >= 1, "identity_net needs d >= 1");
    let eye = Matrix::identity(d);
    let neg = eye.scaled(-1.0);
    let first = Layer::new(Matrix::vstack(&[&eye, &neg]), zero_bias(2 * d)).expect("shape");
    let second = Layer::new(Matrix::hstack(&[&eye, &neg]), zero_bias(d)).expect("shape");
    Network::new(vec![first, second]).expect("shape")
}

/// Exact identity on `R^d` with the given number of layers.
pub fn identity_of_length(d: usize, length: usize) -> Network {
    assert!(d >= 1 && length >= 1, "identity_of_length needs d >= 1 and length >= 1");
    if length == 1 {
        return affine_net(Matrix::identity(d), zero_bias(d)).expect("shape");
    }
    let id = identity_net(d);
    let mut net = id.clone();
    for _ in 2..length {
        net = compose(&id, &net).expect("shape");
    }
    net
}

/// `f • g = f ∘ (I ∘ g)` with `I = identity_net(out_dim(g))`; length
/// `L(f) + L(g)`.
pub fn concat_with_identity(f: &Network, g: &Network) -> Result<Network, CalcError> {
    if f.in_dim() != g.out_dim() {
        return Err(CalcError::DimMismatch { expected: f.in_dim(), got: g.out_dim() });
    }
    let padded = compose(&identity_net(g.out_dim()), g)?;
    compose(f, &padded)
}

/// Pads `net` on the input side with identity layers until it has
/// `length` layers. The realization is unchanged.
pub fn extend_length(net: &Network, length: usize) -> Result<Network, CalcError> {
    let l = net.length();
    if length < l {
        return Err(CalcError::InvalidArgument("target length below current length"));
    }
    if length == l {
        return Ok(net.clone());
    }
    compose(net, &identity_of_length(net.in_dim(), length - l + 1))
}

/// Multiplies the output of `net` by `c`.
pub fn scale_output(net: &Network, c: f64) -> Network {
    let mut layers = net.layers().to_vec();
    let last = layers.pop().expect("nonempty");
    let bias = last.bias().iter().map(|b| c * b).collect();
    layers.push(Layer::new(last.weight().scaled(c), bias).expect("shape"));
    Network::new(layers).expect("shape")
}

/// Block-diagonal parallelization of networks of equal length acting on
/// concatenated inputs and producing concatenated outputs.
pub fn parallel(nets: &[Network]) -> Result<Network, CalcError> {
    let length = common_length(nets)?;
    let mut layers = Vec::with_capacity(length);
    for k in 0..length {
        let ws: Vec<&Matrix> = nets.iter().map(|n| n.layers()[k].weight()).collect();
        let b: Vec<f64> = nets.iter().flat_map(|n| n.layers()[k].bias().iter().copied()).collect();
        layers.push(Layer::new(Matrix::block_diag(&ws), b)?);
    }
    Network::new(layers)
}

/// Parallelization of networks of equal length sharing one input; the
/// outputs are concatenated.
pub fn parallel_shared(nets: &[Network]) -> Result<Network, CalcError> {
    let length = common_length(nets)?;
    let d = nets[0].in_dim();
    if let Some(bad) = nets.iter().find(|n| n.in_dim() != d) {
        return Err(CalcError::DimMismatch { expected: d, got: bad.in_dim() });
    }
    let mut layers = Vec::with_capacity(length);
    for k in 0..length {
        let ws: Vec<&Matrix> = nets.iter().map(|n| n.layers()[k].weight()).collect();
        let w = if k == 0 { Matrix::vstack(&ws) } else { Matrix::block_diag(&ws) };
        let b: Vec<f64> = nets.iter().flat_map(|n| n.layers()[k].bias().iter().copied()).collect();
        layers.push(Layer::new(w, b)?);
    }
    Network::new(layers)
}

/// Network realizing `x -> sum_m weights[m] * R(nets[m])(x)`.
///
/// Shorter networks are padded on the input side with identities, the
/// padded networks are run in parallel on the shared input and their
/// output layers are merged.
pub fn average_nets(nets: &[Network], weights: &[f64]) -> Result<Network, CalcError> {
    if nets.is_empty() {
        return Err(CalcError::EmptyList);
    }
    if nets.len() != weights.len() {
        return Err(CalcError::InvalidArgument("one weight per network is required"));
    }
    let (din, dout) = (nets[0].in_dim(), nets[0].out_dim());
    for n in nets {
        if n.in_dim() != din {
            return Err(CalcError::DimMismatch { expected: din, got: n.in_dim() });
        }
        if n.out_dim() != dout {
            return Err(CalcError::DimMismatch { expected: dout, got: n.out_dim() });
        }
    }
    let length = nets.iter().map(Network::length).max().unwrap_or(1);
    let padded: Vec<Network> =
        nets.iter().map(|n| extend_length(n, length)).collect::<Result<_, _>>()?;

    let mut bias = vec![0.0; dout];
    for (n, &w) in padded.iter().zip(weights) {
        for (b, nb) in bias.iter_mut().zip(n.layers()[length - 1].bias()) {
            *b += w * nb;
        }
    }
    let scaled: Vec<Matrix> =
        padded.iter().zip(weights).map(|(n, &w)| n.layers()[length - 1].weight().scaled(w)).collect();

    if length == 1 {
        let mut w = scaled[0].clone();
        for s in &scaled[1..] {
            w = w.add(s);
        }
        return affine_net(w, bias);
    }
    let mut layers = Vec::with_capacity(length);
    for k in 0..length - 1 {
        let ws: Vec<&Matrix> = padded.iter().map(|n| n.layers()[k].weight()).collect();
        let w = if k == 0 { Matrix::vstack(&ws) } else { Matrix::block_diag(&ws) };
        let b: Vec<f64> = padded.iter().flat_map(|n| n.layers()[k].bias().iter().copied()).collect();
        layers.push(Layer::new(w, b)?);
    }
    let refs: Vec<&Matrix> = scaled.iter().collect();
    layers.push(Layer::new(Matrix::hstack(&refs), bias)?);
    Network::new(layers)
}

fn common_length(nets: &[Network]) -> Result<usize, CalcError> {
    let first = nets.first().ok_or(CalcError::EmptyList)?;
    if nets.iter().any(|n| n.length() != first.length()) {
        return Err(CalcError::LengthMismatch);
    }
    Ok(first.length())
}
