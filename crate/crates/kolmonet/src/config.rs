//! TOML configuration with one table per command; keys are the flag names.
//!
//! ```toml
//! [plan]
//! d = 10
//! eps = 0.1
//!
//! [build]
//! problem = "heat_relu"
//! N = 8
//! M = 64
//! delta = 0.00390625
//! ```
//!
//! A flag given on the command line wins over the file, and the file wins
//! over the built-in default.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct PlanSection {
    pub d: Option<usize>,
    pub eps: Option<f64>,
    pub kappa: Option<f64>,
    pub eta: Option<f64>,
    #[serde(rename = "T")]
    pub horizon: Option<f64>,
    pub p: Option<f64>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct BuildSection {
    pub problem: Option<String>,
    pub d: Option<usize>,
    #[serde(rename = "N")]
    pub steps: Option<usize>,
    #[serde(rename = "M")]
    pub samples: Option<usize>,
    pub delta: Option<f64>,
    pub eps: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct VerifySection {
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub problem: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct StudySection {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub plan: PlanSection,
    pub build: BuildSection,
    pub verify: VerifySection,
    pub study: StudySection,
}

impl Config {
    pub fn from_toml(text: &str, path: &Path) -> Result<Config> {
        toml::from_str(text).map_err(|e| Error::Config { path: path.into(), message: e.message().to_string() })
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })?;
        Config::from_toml(&text, path)
    }
}
