use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

/// Side file describing how a result was produced. Result payloads carry no
/// timestamps or host data; everything run-specific lives here.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub version: &'static str,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub wall_seconds: f64,
    pub unix_time: u64,
}

pub fn sha256_file(path: &Path) -> std::io::Result<String> {
    Ok(hex::encode(Sha256::digest(std::fs::read(path)?)))
}

impl RunManifest {
    pub fn new(inputs: &[PathBuf], outputs: &[PathBuf], wall_seconds: f64) -> std::io::Result<Self> {
        let hash_all = |paths: &[PathBuf]| -> std::io::Result<BTreeMap<String, String>> {
            paths
                .iter()
                .map(|p| Ok((p.display().to_string(), sha256_file(p)?)))
                .collect()
        };
        Ok(RunManifest {
            command_line: std::env::args().collect(),
            version: env!("CARGO_PKG_VERSION"),
            inputs: hash_all(inputs)?,
            outputs: hash_all(outputs)?,
            wall_seconds,
            unix_time: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        })
    }

    /// `result.json` gets `result.json.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, text + "\n")
    }
}
