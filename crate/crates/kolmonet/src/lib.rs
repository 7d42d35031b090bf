//! File formats, configuration, parallel drivers, studies and the command
//! line front end for `kolmonet-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod parallel;
pub mod study;

pub use error::{Error, Result};
