#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::Vector3;
use spincurrent::{ingest, MolecularSystem, SpinResolvedDensity};

pub const FIXTURES: [&str; 4] = ["h_atom", "model_triplet", "o2_triplet", "no_doublet"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(&format!("{name}.fchk"))).unwrap()
}

pub fn load(name: &str) -> (MolecularSystem, SpinResolvedDensity) {
    ingest::read_fchk(fixture_path(&format!("{name}.fchk"))).unwrap()
}

/// (point, charge density, spin density) evaluated independently when the
/// fixture was generated.
pub fn reference_points(name: &str) -> Vec<(Vector3<f64>, f64, f64)> {
    let text = std::fs::read_to_string(fixture_path(&format!("{name}.points"))).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let v: Vec<f64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            (Vector3::new(v[0], v[1], v[2]), v[3], v[4])
        })
        .collect()
}

/// Deterministic pseudo-random points in a cube of half-width `half`.
pub fn scattered_points(n: usize, half: f64, seed: u64) -> Vec<Vector3<f64>> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    (0..n).map(|_| Vector3::new(next(), next(), next()) * half).collect()
}
