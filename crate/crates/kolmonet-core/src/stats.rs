//! Order-fixed summation and Monte Carlo summaries.

use crate::math::sqrt;

/// Pairwise (cascade) summation; the result depends only on the order of
/// `xs`, never on how the work was scheduled.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

impl Estimate {
    /// Summarizes samples; the standard error uses the unbiased variance.
    pub fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len();
        if n == 0 {
            return Estimate { mean: f64::NAN, std_error: f64::NAN, samples: 0 };
        }
        // shifted by the first sample: exact for constant data
        let x0 = xs[0];
        let mut shifted = alloc::vec::Vec::with_capacity(n);
        shifted.extend(xs.iter().map(|x| x - x0));
        let mean = x0 + pairwise_sum(&shifted) / n as f64;
        if n == 1 {
            return Estimate { mean, std_error: 0.0, samples: 1 };
        }
        let mut dev = alloc::vec::Vec::with_capacity(n);
        dev.extend(xs.iter().map(|x| (x - mean) * (x - mean)));
        let var = pairwise_sum(&dev) / (n as f64 - 1.0);
        Estimate { mean, std_error: sqrt(var / n as f64), samples: n }
    }

    /// Estimate of `mean^(1/p)` for samples of a p-th power, with the
    /// delta-method standard error.
    pub fn root(self, p: f64) -> Estimate {
        let m = self.mean.max(0.0);
        let r = crate::math::powf(m, 1.0 / p);
        let se = if m > 0.0 { self.std_error * r / (p * m) } else { 0.0 };
        Estimate { mean: r, std_error: se, samples: self.samples }
    }
}
