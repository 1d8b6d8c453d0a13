// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use crate::args::Command;

/// Everything needed to reproduce one output file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: Command,
    pub seed: Option<u64>,
    /// Worker count used; results do not depend on it.
    pub workers: usize,
    pub started: String,
    pub finished: String,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing manifest {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
    }
}

/// Seed carried by a command, if it has one.
pub fn command_seed(command: &Command) -> Option<u64> {
    match command {
        Command::Sweep(a) => Some(a.seed),
        Command::Correlations(a) | Command::Decay(a) | Command::Perqubit(a) => Some(a.seed),
        Command::SurfaceRate(a) => Some(a.seed),
        Command::Bench(a) => Some(a.seed),
        _ => None,
    }
}

/// `<out>.manifest.json` next to the output.
pub fn default_manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}
