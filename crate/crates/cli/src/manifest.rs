use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::input::sha256_hex;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Provenance of one invocation, written next to its outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    /// SHA-256 over command, parameters, input digest, seed and version.
    pub run_id: String,
    pub command: String,
    pub parameters: serde_json::Value,
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub started_at: f64,
    pub finished_at: f64,
    pub outputs: Vec<PathBuf>,
}

fn now() -> f64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0.0, |d| d.as_secs_f64())
}

impl RunManifest {
    /// `parameters` must not contain output paths or worker counts, which
    /// do not change results.
    pub fn start(
        command: &str,
        parameters: serde_json::Value,
        input_digest: Option<String>,
        seed: Option<u64>,
    ) -> Self {
        let key = serde_json::json!({
            "command": command,
            "parameters": parameters,
            "input_digest": input_digest,
            "seed": seed,
            "version": VERSION,
        });
        Self {
            run_id: sha256_hex(key.to_string().as_bytes()),
            command: command.to_string(),
            parameters,
            input_digest,
            seed,
            version: VERSION.to_string(),
            started_at: now(),
            finished_at: 0.0,
            outputs: Vec::new(),
        }
    }

    pub fn finish(&mut self, outputs: Vec<PathBuf>) {
        self.finished_at = now();
        self.outputs = outputs;
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        text.push('\n');
        std::fs::write(path, text)
    }
}

/// `<out>.manifest.json`.
pub fn default_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_id_ignores_time() {
        let a = RunManifest::start(
            "eval",
            serde_json::json!({"precision": "double"}),
            Some("ab".into()),
            None,
        );
        let b = RunManifest::start(
            "eval",
            serde_json::json!({"precision": "double"}),
            Some("ab".into()),
            None,
        );
        assert_eq!(a.run_id, b.run_id);
        let c = RunManifest::start(
            "eval",
            serde_json::json!({"precision": "extended"}),
            Some("ab".into()),
            None,
        );
        assert_ne!(a.run_id, c.run_id);
        assert_eq!(a.run_id.len(), 64);
    }

    #[test]
    fn manifest_path() {
        assert_eq!(
            default_path(Path::new("out/run.csv")),
            PathBuf::from("out/run.csv.manifest.json")
        );
    }
}
