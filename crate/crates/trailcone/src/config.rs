//! Job configuration files.
//!
//! A job is a JSON object. Only `cartan` is needed for `enumerate` and
//! `verify`; `sgraph` accepts either a bare `c` or a `class` selector.
//!
//! ```json
//! {
//!   "cartan": [[2, -1], [-1, 2]],
//!   "word": [1, 2, 1],
//!   "t": 1,
//!   "depth": 6,
//!   "convention": "dual",
//!   "c": [2, 3, 1],
//!   "class": { "t": 1, "j": 3, "index": 0 },
//!   "inject": [{ "t": 1, "layer": 1, "function": [5, -7, 1] }]
//! }
//! ```
//!
//! Node labels are 1-based. A missing `word` means the lexicographically
//! first reduced word of the longest element; a missing `t` means every node.

use crate::cartan::{fixtures, validate_gcm, CartanData, CartanError, WordJ};
use crate::crystal::Convention;
use crate::trails::LinearFunctionBJ;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

pub const DEFAULT_DEPTH: usize = 6;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("the Cartan matrix is not of finite type")]
    NotFiniteType,
}

impl ConfigError {
    fn field(field: &'static str, message: impl ToString) -> Self {
        ConfigError::Field { field, message: message.to_string() }
    }
}

/// The file format, as written.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    #[serde(default)]
    pub cartan: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub word: Option<Vec<u32>>,
    #[serde(default)]
    pub t: Option<u32>,
    #[serde(default)]
    pub depth: Option<usize>,
    #[serde(default)]
    pub convention: Option<Convention>,
    #[serde(default)]
    pub c: Option<Vec<i64>>,
    #[serde(default)]
    pub class: Option<ClassSelector>,
    #[serde(default)]
    pub inject: Vec<Injection>,
}

/// Picks the `index`-th class (in the library's order) of trails for node
/// `t` at step `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSelector {
    pub t: u32,
    pub j: usize,
    #[serde(default)]
    pub index: usize,
}

/// A spurious function added to a layer of the envelope, for exercising
/// the false-trail path. Without `t` it applies to every node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Injection {
    #[serde(default)]
    pub t: Option<u32>,
    pub layer: usize,
    pub function: Vec<i64>,
}

impl JobConfig {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read { path: shown.clone(), message: e.to_string() })?;
        Self::from_json(&text).map_err(|e| match e {
            ConfigError::Parse { message, .. } => ConfigError::Parse { path: shown, message },
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError::Parse { path: "<config>".into(), message: e.to_string() })
    }
}

/// A Cartan matrix of finite type with a reduced word.
#[derive(Debug, Clone)]
pub struct Instance {
    pub cartan: CartanData,
    pub word: WordJ,
    /// 0-based node indices to process, ascending.
    pub ts: Vec<usize>,
}

impl Instance {
    pub fn from_config(config: &JobConfig) -> Result<Self, ConfigError> {
        let matrix = config.cartan.as_ref().ok_or_else(|| ConfigError::field("cartan", "missing"))?;
        let cartan = validate_gcm(matrix).map_err(|e| ConfigError::field("cartan", e))?;
        if cartan.require_finite().is_err() {
            return Err(ConfigError::NotFiniteType);
        }
        let word = match &config.word {
            Some(labels) => WordJ::from_labels(&cartan, labels).map_err(|e| ConfigError::field("word", e))?,
            None => WordJ::new(&cartan, fixtures::longest_word(matrix)).map_err(|e| ConfigError::field("word", e))?,
        };
        let ts = match config.t {
            Some(label) => vec![node(&cartan, "t", label)?],
            None => (0..cartan.rank()).collect(),
        };
        Ok(Instance { cartan, word, ts })
    }

    /// Injected functions for node `t`, as `(layer, function)`.
    pub fn injections(&self, config: &JobConfig, t: usize) -> Result<Vec<(usize, LinearFunctionBJ)>, ConfigError> {
        let mut out = Vec::new();
        for inj in &config.inject {
            if let Some(label) = inj.t {
                if node(&self.cartan, "inject.t", label)? != t {
                    continue;
                }
            }
            if inj.layer == 0 || inj.layer > self.word.len() {
                return Err(ConfigError::field("inject.layer", format!("{} is outside [1, {}]", inj.layer, self.word.len())));
            }
            if inj.function.len() > self.word.len() {
                return Err(ConfigError::field(
                    "inject.function",
                    format!("has {} coefficients for a word of length {}", inj.function.len(), self.word.len()),
                ));
            }
            out.push((inj.layer, LinearFunctionBJ::from_dense(&inj.function)));
        }
        Ok(out)
    }
}

pub fn node(cartan: &CartanData, field: &'static str, label: u32) -> Result<usize, ConfigError> {
    cartan.index_of(label).map_err(|e: CartanError| ConfigError::field(field, e))
}
