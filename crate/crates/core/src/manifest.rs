//! Run manifests: the reproducibility record written beside outputs.

use crate::CoreError;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Everything needed to reproduce a run: seed, parameters, tool version, and
/// wall-clock bounds in unix seconds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub seed: u64,
    pub version: String,
    pub started_unix_s: u64,
    pub finished_unix_s: u64,
    /// Parameter map with deterministic (sorted) key order.
    pub params: BTreeMap<String, String>,
}

impl RunManifest {
    /// Starts a manifest stamped with the current time.
    pub fn begin(seed: u64, version: &str) -> Self {
        let now = unix_now();
        RunManifest {
            seed,
            version: version.to_string(),
            started_unix_s: now,
            finished_unix_s: now,
            params: BTreeMap::new(),
        }
    }

    /// Records one parameter (stringified).
    pub fn set_param(&mut self, key: &str, value: impl ToString) {
        self.params.insert(key.to_string(), value.to_string());
    }

    /// Stamps the finish time.
    pub fn finish(&mut self) {
        self.finished_unix_s = unix_now().max(self.started_unix_s);
    }

    pub fn to_json(&self) -> Result<String, CoreError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self, CoreError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical manifest location for an output file: `<name>.manifest.json`
    /// next to the output.
    pub fn sidecar_path(output: &Path) -> PathBuf {
        let mut name = output
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "output".to_string());
        name.push_str(".manifest.json");
        output.with_file_name(name)
    }

    /// Writes the manifest beside `output`.
    pub fn write_beside(&self, output: &Path) -> Result<PathBuf, CoreError> {
        let path = Self::sidecar_path(output);
        std::fs::write(&path, self.to_json()?)?;
        Ok(path)
    }
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}
