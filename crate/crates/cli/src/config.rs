//! Defaults for horizon and caps, read from `wordperm.toml`.
//!
//! Lookup order: `--config PATH`, then `./wordperm.toml`, then built-in
//! values. Command-line flags override the file. Environment variables are
//! not consulted.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use wordperm_core::perm::CapPolicy;
use wordperm_core::word::{DEFAULT_HARD_CAP, DEFAULT_HORIZON};

pub const FILE_NAME: &str = "wordperm.toml";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {source}")]
    Parse {
        path: PathBuf,
        source: toml::de::Error,
    },
}

/// File contents; every key is optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub horizon: Option<usize>,
    pub hard_cap: Option<usize>,
    /// Absolute cap on letters inspected per shift comparison.
    pub cap: Option<usize>,
}

/// Resolved settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub horizon: usize,
    pub hard_cap: usize,
    pub policy: CapPolicy,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            horizon: DEFAULT_HORIZON,
            hard_cap: DEFAULT_HARD_CAP,
            policy: CapPolicy::default(),
        }
    }
}

impl Settings {
    pub fn apply(mut self, file: &FileConfig) -> Self {
        if let Some(h) = file.horizon {
            self.horizon = h;
        }
        if let Some(c) = file.hard_cap {
            self.hard_cap = c;
        }
        if let Some(c) = file.cap {
            self.policy.absolute_cap = c;
        }
        self
    }
}

/// Reads the explicit file, or `dir/wordperm.toml` if present.
pub fn load(explicit: Option<&Path>, dir: &Path) -> Result<FileConfig, ConfigError> {
    let path = match explicit {
        Some(p) => p.to_path_buf(),
        None => {
            let p = dir.join(FILE_NAME);
            if !p.is_file() {
                return Ok(FileConfig::default());
            }
            p
        }
    };
    let text = fs::read_to_string(&path).map_err(|source| ConfigError::Read {
        path: path.clone(),
        source,
    })?;
    toml::from_str(&text).map_err(|source| ConfigError::Parse { path, source })
}
