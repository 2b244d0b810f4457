use std::path::Path;

use atiyah_core::Configuration;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::CliError;

/// A single configuration or a batch under `"configurations"`.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Single(Configuration),
    Batch(Vec<Configuration>),
}

impl Input {
    pub fn configurations(&self) -> &[Configuration] {
        match self {
            Input::Single(c) => std::slice::from_ref(c),
            Input::Batch(cs) => cs,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Batch {
    configurations: Vec<serde_json::Value>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a configuration file, returning it with the SHA-256 of its bytes.
pub fn read_input(path: &Path) -> Result<(Input, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Input(format!("{} is not UTF-8", path.display())))?;
    Ok((parse_input(text)?, sha256_hex(&bytes)))
}

/// Parses and validates configuration JSON.
pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    if value.get("configurations").is_some() {
        let batch: Batch = serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?;
        let configs = batch
            .configurations
            .into_iter()
            .enumerate()
            .map(|(k, v)| parse_one(v).map_err(|e| e.in_batch(k)))
            .collect::<Result<Vec<_>, _>>()?;
        if configs.is_empty() {
            return Err(CliError::Schema("\"configurations\" is empty".to_string()));
        }
        return Ok(Input::Batch(configs));
    }
    parse_one(value).map(Input::Single)
}

fn parse_one(value: serde_json::Value) -> Result<Configuration, CliError> {
    let cfg: Configuration = serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))?;
    cfg.validate().map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(cfg)
}
