//! Versioned JSON documents for networks and built solutions.
//!
//! Weights are stored as sparse `[row, col, value]` triplets in row-major
//! order; absent entries are zero. Reals are written in the shortest form
//! that parses back to the same `f64`, so a round trip is bit-exact.

use std::fs;
use std::path::Path;

use kolmonet_core::ann_calculus::{Layer, Matrix, Network};
use kolmonet_core::bounds::Budget;
use kolmonet_core::builder::{BoundValues, Provenance, SolutionNet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};

pub const NETWORK_FORMAT: &str = "kolmonet-network";
pub const SOLUTION_FORMAT: &str = "kolmonet-solution";
pub const VERSION: u32 = 1;

/// Structured parse and validation failures.
#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("expected format `{expected}`, found `{found}`")]
    WrongFormat { expected: &'static str, found: String },
    #[error("unsupported version {found} (this build reads version {VERSION})")]
    UnsupportedVersion { found: u32 },
    #[error("dims header: {0}")]
    Dims(String),
    #[error("layer {index}: {message}")]
    Layer { index: usize, message: String },
    #[error("{0} is not finite")]
    NonFinite(&'static str),
    #[error("provenance: {0}")]
    Provenance(String),
}

#[derive(Serialize, Deserialize)]
struct LayerDoc {
    weight: Vec<(usize, usize, f64)>,
    bias: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct NetworkDoc {
    format: String,
    version: u32,
    dims: Vec<usize>,
    layers: Vec<LayerDoc>,
}

#[derive(Serialize, Deserialize)]
struct BoundsDoc {
    param_count: u64,
    param_bound: f64,
    error_bound: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProvenanceDoc {
    problem_hash: String,
    seed: u64,
    #[serde(rename = "N")]
    steps: usize,
    #[serde(rename = "M")]
    samples: usize,
    delta: f64,
    bound_values: BoundsDoc,
}

#[derive(Serialize, Deserialize)]
struct SolutionDoc {
    format: String,
    version: u32,
    network: NetworkDoc,
    provenance: ProvenanceDoc,
}

/// Header fields read before the body, so a version or format mismatch is
/// reported as such rather than as a missing field.
#[derive(Deserialize)]
struct Header {
    format: String,
    version: u32,
}

fn syntax(e: serde_json::Error) -> FormatError {
    FormatError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

fn check_header(text: &str, expected: &'static str) -> std::result::Result<(), FormatError> {
    let h: Header = serde_json::from_str(text).map_err(syntax)?;
    if h.format != expected {
        return Err(FormatError::WrongFormat { expected, found: h.format });
    }
    if h.version != VERSION {
        return Err(FormatError::UnsupportedVersion { found: h.version });
    }
    Ok(())
}

fn network_doc(net: &Network) -> std::result::Result<NetworkDoc, FormatError> {
    let mut layers = Vec::with_capacity(net.length());
    for l in net.layers() {
        let weight: Vec<_> = l.weight().triplets().collect();
        if weight.iter().any(|&(_, _, v)| !v.is_finite()) || l.bias().iter().any(|v| !v.is_finite()) {
            return Err(FormatError::NonFinite("network parameter"));
        }
        layers.push(LayerDoc { weight, bias: l.bias().to_vec() });
    }
    Ok(NetworkDoc { format: NETWORK_FORMAT.into(), version: VERSION, dims: net.dims(), layers })
}

fn network_from_doc(doc: NetworkDoc) -> std::result::Result<Network, FormatError> {
    if doc.dims.len() != doc.layers.len() + 1 {
        return Err(FormatError::Dims(format!(
            "{} dims for {} layers",
            doc.dims.len(),
            doc.layers.len()
        )));
    }
    if doc.layers.is_empty() {
        return Err(FormatError::Dims("a network needs at least one layer".into()));
    }
    if let Some(i) = doc.dims.iter().position(|&d| d == 0) {
        return Err(FormatError::Dims(format!("entry {i} is zero")));
    }
    let mut layers = Vec::with_capacity(doc.layers.len());
    for (k, l) in doc.layers.into_iter().enumerate() {
        let (rows, cols) = (doc.dims[k + 1], doc.dims[k]);
        let bad = |message: String| FormatError::Layer { index: k, message };
        if l.bias.len() != rows {
            return Err(bad(format!("bias has length {}, dims say {rows}", l.bias.len())));
        }
        if l.weight.iter().any(|&(_, _, v)| !v.is_finite()) || l.bias.iter().any(|v| !v.is_finite()) {
            return Err(FormatError::NonFinite("network parameter"));
        }
        let w = Matrix::from_triplets(rows, cols, &l.weight)
            .ok_or_else(|| bad(format!("weight entries out of range or not sorted for a {rows} x {cols} matrix")))?;
        layers.push(Layer::new(w, l.bias).map_err(|e| bad(e.to_string()))?);
    }
    Network::new(layers).map_err(|e| FormatError::Dims(e.to_string()))
}

pub fn network_to_string(net: &Network) -> std::result::Result<String, FormatError> {
    let doc = network_doc(net)?;
    let mut s = serde_json::to_string(&doc).expect("network document serializes");
    s.push('\n');
    Ok(s)
}

pub fn network_from_str(text: &str) -> std::result::Result<Network, FormatError> {
    check_header(text, NETWORK_FORMAT)?;
    network_from_doc(serde_json::from_str(text).map_err(syntax)?)
}

fn parse_hash(text: &str) -> std::result::Result<[u8; 32], FormatError> {
    let mut out = [0u8; 32];
    hex::decode_to_slice(text, &mut out)
        .map_err(|e| FormatError::Provenance(format!("problem_hash must be 64 hex digits: {e}")))?;
    Ok(out)
}

pub fn solution_to_string(sol: &SolutionNet) -> std::result::Result<String, FormatError> {
    let p = &sol.provenance;
    let b = &p.bounds;
    if !(p.budget.delta.is_finite() && b.param_bound.is_finite() && b.error_bound.is_finite()) {
        return Err(FormatError::NonFinite("provenance value"));
    }
    let doc = SolutionDoc {
        format: SOLUTION_FORMAT.into(),
        version: VERSION,
        network: network_doc(&sol.net)?,
        provenance: ProvenanceDoc {
            problem_hash: kolmonet_core::builder::to_hex(&p.problem_hash),
            seed: p.seed,
            steps: p.budget.steps,
            samples: p.budget.samples,
            delta: p.budget.delta,
            bound_values: BoundsDoc { param_count: b.param_count, param_bound: b.param_bound, error_bound: b.error_bound },
        },
    };
    let mut s = serde_json::to_string(&doc).expect("solution document serializes");
    s.push('\n');
    Ok(s)
}

pub fn solution_from_str(text: &str) -> std::result::Result<SolutionNet, FormatError> {
    check_header(text, SOLUTION_FORMAT)?;
    let doc: SolutionDoc = serde_json::from_str(text).map_err(syntax)?;
    if doc.network.format != NETWORK_FORMAT || doc.network.version != VERSION {
        return Err(FormatError::WrongFormat { expected: NETWORK_FORMAT, found: doc.network.format });
    }
    let net = network_from_doc(doc.network)?;
    let p = doc.provenance;
    let budget = Budget::new(p.steps, p.samples, p.delta).map_err(|e| FormatError::Provenance(e.to_string()))?;
    if p.bound_values.param_count != net.param_count() {
        return Err(FormatError::Provenance(format!(
            "param_count {} differs from the network's {}",
            p.bound_values.param_count,
            net.param_count()
        )));
    }
    Ok(SolutionNet {
        net,
        provenance: Provenance {
            problem_hash: parse_hash(&p.problem_hash)?,
            seed: p.seed,
            budget,
            bounds: BoundValues {
                param_count: p.bound_values.param_count,
                param_bound: p.bound_values.param_bound,
                error_bound: p.bound_values.error_bound,
            },
        },
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io { path: path.into(), source })
}

pub fn read_network(path: &Path) -> Result<Network> {
    network_from_str(&read(path)?).map_err(|source| Error::Format { path: path.into(), source })
}

pub fn write_network(path: &Path, net: &Network) -> Result<()> {
    let text = network_to_string(net).map_err(|source| Error::Format { path: path.into(), source })?;
    write(path, &text)
}

pub fn read_solution(path: &Path) -> Result<SolutionNet> {
    solution_from_str(&read(path)?).map_err(|source| Error::Format { path: path.into(), source })
}

pub fn write_solution(path: &Path, sol: &SolutionNet) -> Result<()> {
    let text = solution_to_string(sol).map_err(|source| Error::Format { path: path.into(), source })?;
    write(path, &text)
}
