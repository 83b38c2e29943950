//! `--config` files and `--preset` values.
//!
//! A config file is TOML with one top-level key per command-line flag,
//! spelled as on the command line without the leading dashes (for example
//! `threshold-c = 0.4` or `k-list = [64, 128]`). Flags given on the command
//! line take precedence over the file, and the file over the preset.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub preset: Option<String>,
    pub threads: Option<usize>,
    pub k: Option<usize>,
    pub k_list: Option<Vec<usize>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub threshold_c: Option<f64>,
    pub scheme: Option<Vec<String>>,
    pub schemes: Option<Vec<String>>,
    pub metric: Option<String>,
    pub ssa_restarts: Option<usize>,
    pub coloring_order: Option<String>,
    pub record_timing: Option<bool>,
    pub out: Option<PathBuf>,
    pub aggregate_out: Option<PathBuf>,
    pub lemma: Option<String>,
    pub s: Option<usize>,
    pub r: Option<Vec<f64>>,
    pub p: Option<f64>,
    pub gradient_points: Option<usize>,
    pub mode: Option<String>,
    pub restarts: Option<usize>,
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub envelope: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::io(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Failure::usage(format!("--config {}: {e}", path.display())))
    }
}

/// Named bundles of defaults selected with `--preset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Desk-scale defaults: K = 2^6..2^13, 100 trials, c = 0.4.
    Default,
    /// Threshold c = π: K in {2^14, 2^15}, 10 trials, c = π.
    Paper,
}

impl std::str::FromStr for Preset {
    type Err = Failure;

    fn from_str(s: &str) -> Result<Self, Failure> {
        match s {
            "default" => Ok(Preset::Default),
            "paper" => Ok(Preset::Paper),
            other => Err(Failure::usage(format!(
                "--preset: unknown preset `{other}` (expected default or paper)"
            ))),
        }
    }
}

/// First of command line, config file, preset.
pub fn pick<T>(flag: Option<T>, file: Option<T>, preset: Option<T>) -> Option<T> {
    flag.or(file).or(preset)
}
