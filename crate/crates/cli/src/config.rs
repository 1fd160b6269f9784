//! Run configuration: an optional TOML file overlaid by command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// Keys accepted in a `--config` file. Every key mirrors a flag of the same
/// name (dashes become underscores); flags win over the file.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub density: Option<PathBuf>,
    pub mode: Option<String>,
    pub temp: Option<f64>,
    pub grid: Option<String>,
    pub spin: Option<f64>,
    pub threads: Option<usize>,
    pub out: Option<PathBuf>,
    pub nuclei: Option<Vec<usize>>,
    #[serde(default)]
    pub gi: BTreeMap<String, f64>,
    #[serde(default)]
    pub radius: BTreeMap<String, f64>,
    pub allow_radius_fallback: Option<bool>,
    pub statistics: Option<String>,
    pub field_strength: Option<f64>,
    pub with_soc_shielding: Option<bool>,
    pub no_soc: Option<bool>,
    pub orbital: Option<PathBuf>,
    pub reference: Option<f64>,
    pub field: Option<String>,
    pub axis: Option<String>,
    #[serde(rename = "box")]
    pub bounds: Option<[f64; 6]>,
    pub spacing: Option<f64>,
    pub points: Option<usize>,
    pub step: Option<f64>,
    pub seed: Option<u64>,
    pub delta_g: Option<f64>,
    pub kp: Option<f64>,
    pub pressure: Option<f64>,
    pub chi_monomer: Option<f64>,
    pub chi_dimer: Option<f64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Splits `key=value` pairs as used by `--gi` and `--radius`.
pub fn parse_assignments(items: &[String], what: &str) -> Result<BTreeMap<String, f64>> {
    let mut out = BTreeMap::new();
    for item in items {
        let Some((k, v)) = item.split_once('=') else {
            bail!("--{what} expects key=value, got `{item}`");
        };
        let v: f64 = v.trim().parse().with_context(|| format!("--{what} {item}: bad number"))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// The fully resolved settings of one run. Serialized into the results file
/// and hashed for provenance.
#[derive(Debug, Clone, Serialize)]
pub struct Resolved {
    pub command: String,
    pub settings: BTreeMap<String, serde_json::Value>,
}

impl Resolved {
    pub fn new(command: &str) -> Self {
        Resolved { command: command.to_string(), settings: BTreeMap::new() }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.settings.insert(key.to_string(), serde_json::to_value(value).expect("settings serialize"));
    }
}
