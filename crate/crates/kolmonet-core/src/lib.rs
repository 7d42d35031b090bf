//! Constructive approximation of Kolmogorov PDE solutions by ReLU networks.
//!
//! The crate is `no_std` (with `alloc`). It contains the network calculus,
//! additive-noise Euler schemes with a counter-based random source, closed
//! form error and size bounds, the space-time network builder, and a set of
//! reference problems with exact solutions.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ann_calculus;
pub mod bounds;
pub mod builder;
pub mod reference;
pub mod rng;
pub mod sde_sim;
pub mod stats;

mod math;
