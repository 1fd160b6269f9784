//! Results files: JSON with the resolved settings, their hash and the
//! versions of the shipped data tables.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use nalgebra::Matrix3;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use spincurrent::data::DATA_VERSIONS;
use spincurrent::PropertyTensor;

use crate::config::Resolved;

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex(&Sha256::digest(bytes))
}

pub fn file_hash(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(sha256_hex(&bytes))
}

pub fn matrix(m: &Matrix3<f64>) -> Value {
    json!([[m[(0, 0)], m[(0, 1)], m[(0, 2)]], [m[(1, 0)], m[(1, 1)], m[(1, 2)]], [m[(2, 0)], m[(2, 1)], m[(2, 2)]]])
}

/// Full tensor, iso values and breakdown.
pub fn tensor(t: &PropertyTensor) -> Value {
    let part = |m: &Option<Matrix3<f64>>| match m {
        Some(m) => json!({ "tensor": matrix(m), "iso": m.trace() / 3.0 }),
        None => Value::Null,
    };
    json!({
        "unit": t.unit.to_string(),
        "mode": t.mode.to_string(),
        "temperature_K": t.temperature,
        "total": { "tensor": matrix(&t.total), "iso": t.iso() },
        "zee": { "tensor": matrix(&t.zee), "iso": t.zee.trace() / 3.0 },
        "soc": part(&t.soc),
        "orbital": part(&t.orbital),
    })
}

/// Writes `<out>/<command>.json` and returns its path.
pub fn write(out: &Path, resolved: &Resolved, results: Value) -> Result<PathBuf> {
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let settings = serde_json::to_string(resolved)?;
    let versions: serde_json::Map<String, Value> =
        DATA_VERSIONS.iter().map(|(name, v)| (name.to_string(), json!(v))).collect();
    let doc = json!({
        "program": { "name": "spincurrent", "version": env!("CARGO_PKG_VERSION") },
        "command": resolved.command,
        "config_hash": sha256_hex(settings.as_bytes()),
        "data_versions": versions,
        "settings": resolved.settings,
        "results": results,
    });
    let path = out.join(format!("{}.json", resolved.command));
    fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path)
}

pub fn print_tensor(label: &str, m: &Matrix3<f64>) {
    println!("  {label}");
    for i in 0..3 {
        println!("    {:14.4} {:14.4} {:14.4}", m[(i, 0)], m[(i, 1)], m[(i, 2)]);
    }
}
