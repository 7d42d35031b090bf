//! ReLU network calculus: representation, realization, parameter counting,
//! composition, identities, parallelization and product networks.

mod matrix;
mod ops;
mod product;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

pub use matrix::Matrix;
pub use ops::{
    affine_net, average_nets, compose, concat_with_identity, extend_length, identity_net,
    identity_of_length, parallel, parallel_shared, scale_output,
};
pub use product::{growth_product_net, hat_time_net, product_net, square_net, ProductInfo};

/// Errors raised by the calculus.
#[derive(Clone, Debug, PartialEq)]
pub enum CalcError {
    /// Input vector length differs from the network's input dimension.
    InputShape { expected: usize, got: usize },
    /// Two layers or two networks do not fit together.
    DimMismatch { expected: usize, got: usize },
    /// A layer has zero rows or columns, or weight rows differ from bias length.
    BadLayer,
    EmptyNetwork,
    EmptyList,
    /// Networks that must share a length do not.
    LengthMismatch,
    InvalidArgument(&'static str),
}

impl fmt::Display for CalcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CalcError::InputShape { expected, got } => {
                write!(f, "input has length {got}, network expects {expected}")
            }
            CalcError::DimMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            CalcError::BadLayer => f.write_str("layer weight and bias shapes are inconsistent"),
            CalcError::EmptyNetwork => f.write_str("a network needs at least one layer"),
            CalcError::EmptyList => f.write_str("empty list of networks"),
            CalcError::LengthMismatch => f.write_str("networks have different lengths"),
            CalcError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl core::error::Error for CalcError {}

/// One affine layer `x -> W x + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Layer {
    weight: Matrix,
    bias: Vec<f64>,
}

impl Layer {
    pub fn new(weight: Matrix, bias: Vec<f64>) -> Result<Self, CalcError> {
        if weight.rows() == 0 || weight.cols() == 0 || weight.rows() != bias.len() {
            return Err(CalcError::BadLayer);
        }
        Ok(Layer { weight, bias })
    }

    pub fn weight(&self) -> &Matrix {
        &self.weight
    }

    pub fn bias(&self) -> &[f64] {
        &self.bias
    }

    pub fn in_dim(&self) -> usize {
        self.weight.cols()
    }

    pub fn out_dim(&self) -> usize {
        self.weight.rows()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        self.weight.mul_vec_into(x, out);
        for (o, b) in out.iter_mut().zip(&self.bias) {
            *o += *b;
        }
    }
}

/// A fully connected ReLU network: a nonempty chain of layers with the
/// rectifier applied after every layer but the last.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    layers: Vec<Layer>,
}

impl Network {
    pub fn new(layers: Vec<Layer>) -> Result<Self, CalcError> {
        if layers.is_empty() {
            return Err(CalcError::EmptyNetwork);
        }
        for w in layers.windows(2) {
            if w[0].out_dim() != w[1].in_dim() {
                return Err(CalcError::DimMismatch { expected: w[1].in_dim(), got: w[0].out_dim() });
            }
        }
        Ok(Network { layers })
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn into_layers(self) -> Vec<Layer> {
        self.layers
    }

    /// Number of affine layers.
    pub fn length(&self) -> usize {
        self.layers.len()
    }

    /// Layer widths `(l_0, ..., l_L)`.
    pub fn dims(&self) -> Vec<usize> {
        let mut d = Vec::with_capacity(self.layers.len() + 1);
        d.push(self.in_dim());
        d.extend(self.layers.iter().map(Layer::out_dim));
        d
    }

    pub fn in_dim(&self) -> usize {
        self.layers[0].in_dim()
    }

    pub fn out_dim(&self) -> usize {
        self.layers[self.layers.len() - 1].out_dim()
    }

    /// Number of real parameters `sum_k l_k (l_{k-1} + 1)` of the dense
    /// representation.
    pub fn param_count(&self) -> u64 {
        param_count_of_dims(&self.dims())
    }

    /// Number of stored nonzero weights plus all biases.
    pub fn stored_entries(&self) -> usize {
        self.layers.iter().map(|l| l.weight.nnz() + l.bias.len()).sum()
    }

    /// Evaluates the realization at `x`.
    pub fn realize(&self, x: &[f64]) -> Result<Vec<f64>, CalcError> {
        if x.len() != self.in_dim() {
            return Err(CalcError::InputShape { expected: self.in_dim(), got: x.len() });
        }
        let mut cur = x.to_vec();
        let mut next = Vec::new();
        let last = self.layers.len() - 1;
        for (k, layer) in self.layers.iter().enumerate() {
            next.clear();
            next.resize(layer.out_dim(), 0.0);
            layer.apply_into(&cur, &mut next);
            if k < last {
                for v in next.iter_mut() {
                    *v = relu(*v);
                }
            }
            core::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    /// Realization of a network with one output.
    pub fn realize_scalar(&self, x: &[f64]) -> Result<f64, CalcError> {
        if self.out_dim() != 1 {
            return Err(CalcError::DimMismatch { expected: 1, got: self.out_dim() });
        }
        Ok(self.realize(x)?[0])
    }
}

/// `sum_k l_k (l_{k-1} + 1)` for a dims vector.
pub fn param_count_of_dims(dims: &[usize]) -> u64 {
    dims.windows(2).map(|w| (w[1] as u64) * (w[0] as u64 + 1)).sum()
}

/// The rectifier `max(x, 0)`.
#[inline]
pub fn relu(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Componentwise rectifier.
pub fn relu_vec(x: &[f64]) -> Vec<f64> {
    x.iter().map(|&v| relu(v)).collect()
}

pub(crate) fn zero_bias(n: usize) -> Vec<f64> {
    vec![0.0; n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_affine_layer_has_no_activation() {
        let l = Layer::new(Matrix::from_dense(1, 1, &[2.0]), vec![3.0]).unwrap();
        let net = Network::new(vec![l]).unwrap();
        assert_eq!(net.realize(&[-1.0]).unwrap(), vec![1.0]);
        assert_eq!(net.realize(&[-5.0]).unwrap(), vec![-7.0]);
    }

    #[test]
    fn input_shape_is_checked() {
        let net = identity_net(3);
        assert_eq!(net.realize(&[1.0]), Err(CalcError::InputShape { expected: 3, got: 1 }));
    }

    #[test]
    fn layer_shapes_are_checked() {
        assert_eq!(Layer::new(Matrix::zeros(2, 1), vec![0.0]), Err(CalcError::BadLayer));
        assert_eq!(Layer::new(Matrix::zeros(0, 1), vec![]), Err(CalcError::BadLayer));
        let a = Layer::new(Matrix::zeros(2, 1), vec![0.0; 2]).unwrap();
        let b = Layer::new(Matrix::zeros(1, 3), vec![0.0]).unwrap();
        assert_eq!(Network::new(vec![a, b]), Err(CalcError::DimMismatch { expected: 3, got: 2 }));
        assert_eq!(Network::new(vec![]), Err(CalcError::EmptyNetwork));
    }

    #[test]
    fn param_count_of_small_dims() {
        assert_eq!(param_count_of_dims(&[2, 5, 3]), 33);
        assert_eq!(param_count_of_dims(&[1, 2, 1]), 7);
    }
}
