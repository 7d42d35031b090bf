//! Counter-based random streams.
//!
//! Every stream is addressed by `(seed, path, step, tag)` and is
//! independent of the order in which streams are created, so Monte Carlo
//! loops give identical results sequentially and in parallel.

use crate::math::{ln, sqrt};

/// Purpose tags separating the uses of one seed.
pub mod tag {
    pub const BROWNIAN: u64 = 0x6272_6f77;
    pub const MEASURE: u64 = 0x6d65_6173;
    pub const TEST_POINTS: u64 = 0x7465_7374;
}

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// SplitMix64 stream whose starting state is a hash of its address.
#[derive(Clone, Debug)]
pub struct CounterRng {
    state: u64,
    spare: Option<f64>,
}

impl CounterRng {
    pub fn new(seed: u64, path: u64, step: u64, tag: u64) -> Self {
        let mut k = mix64(seed.wrapping_add(GAMMA));
        k = mix64(k ^ path.wrapping_mul(0xd1b5_4a32_d192_ed03));
        k = mix64(k ^ step.wrapping_mul(0xaef1_7502_108e_f2d9));
        k = mix64(k ^ tag.wrapping_mul(0xf1357aea2e62a9c5));
        CounterRng { state: k, spare: None }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix64(self.state)
    }

    /// Uniform on `(0, 1]`.
    pub fn uniform_open0(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform_open0();
        let u2 = self.uniform();
        let r = sqrt(-2.0 * ln(u1));
        let theta = 2.0 * core::f64::consts::PI * u2;
        self.spare = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }
}
