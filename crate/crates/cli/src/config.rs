use std::path::Path;

use serde::Deserialize;

/// Resource caps read from an optional `key = value` file. Command-line flags
/// take precedence.
#[derive(Debug, Clone, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub dense_cap: Option<usize>,
    pub basis_cap: Option<u64>,
    pub kernel_cap: Option<usize>,
    pub workers: Option<usize>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
