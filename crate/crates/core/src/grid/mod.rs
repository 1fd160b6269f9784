//! Becke-partitioned molecular grids with Treutler–Ahlrichs radial mapping
//! and Lebedev angular rules, plus a deterministic parallel reduction.

mod lebedev;

use std::collections::HashMap;
use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::io::Write;
use std::ops::Add;
use std::str::FromStr;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::data::default_radius;
use crate::error::{Error, Result};
use crate::system::MolecularSystem;

/// Points per reduction block; fixed so sums do not depend on thread count.
pub const REDUCTION_BLOCK: usize = 1024;

/// Radius used for elements without a tabulated r_m when fallback is enabled.
pub const FALLBACK_RADIUS: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quality {
    Coarse,
    Default,
    Fine,
    /// Any radial count with one of the shipped angular orders.
    Custom { radial: usize, angular: usize },
}

/// Angular orders available for [`Quality::Custom`].
pub const ANGULAR_ORDERS: [usize; 3] = [194, 302, 590];

impl Quality {
    /// (radial points, angular points) per atom.
    pub fn counts(self) -> (usize, usize) {
        match self {
            Quality::Coarse => (50, 194),
            Quality::Default => (75, 302),
            Quality::Fine => (99, 590),
            Quality::Custom { radial, angular } => (radial, angular),
        }
    }

    pub fn custom(radial: usize, angular: usize) -> Result<Self> {
        if radial == 0 || !ANGULAR_ORDERS.contains(&angular) {
            return Err(Error::DomainError(format!(
                "grid {radial}x{angular}: need at least one radial point and an angular order in {ANGULAR_ORDERS:?}"
            )));
        }
        Ok(Quality::Custom { radial, angular })
    }
}

impl FromStr for Quality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "coarse" => Ok(Quality::Coarse),
            "default" => Ok(Quality::Default),
            "fine" => Ok(Quality::Fine),
            other => match other.split_once('x').map(|(r, a)| (r.parse(), a.parse())) {
                Some((Ok(r), Ok(a))) => Quality::custom(r, a),
                _ => Err(Error::DomainError(format!(
                    "unknown grid quality `{s}` (coarse, default, fine or <radial>x<angular>)"
                ))),
            },
        }
    }
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quality::Coarse => f.write_str("coarse"),
            Quality::Default => f.write_str("default"),
            Quality::Fine => f.write_str("fine"),
            Quality::Custom { radial, angular } => write!(f, "{radial}x{angular}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GridOptions {
    pub quality: Quality,
    /// Per-element r_m overrides in bohr.
    pub radii: HashMap<u32, f64>,
    /// Use [`FALLBACK_RADIUS`] (with a warning) instead of failing for
    /// elements missing from the table.
    pub allow_radius_fallback: bool,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { quality: Quality::Default, radii: HashMap::new(), allow_radius_fallback: false }
    }
}

impl From<Quality> for GridOptions {
    fn from(quality: Quality) -> Self {
        GridOptions { quality, ..Default::default() }
    }
}

#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    pub points: Vec<Vector3<f64>>,
    pub weights: Vec<f64>,
    /// Atom whose product grid produced each point.
    pub owners: Vec<usize>,
    pub quality: Quality,
}

/// Treutler–Ahlrichs M3 map `r = r_m/ln2 · ln(2/(1−x))` and `dr/dx`.
pub fn radial_map(x: f64, r_m: f64) -> Result<(f64, f64)> {
    if !(x.abs() < 1.0) {
        return Err(Error::DomainError(format!("radial abscissa {x} outside (-1, 1)")));
    }
    let r = r_m / LN_2 * (2.0 / (1.0 - x)).ln();
    let dr = r_m / (LN_2 * (1.0 - x));
    Ok((r, dr))
}

/// Second-kind Gauss–Chebyshev rule mapped to (0, ∞): nodes r_i and
/// weights including r², so that `Σ w_i f(r_i) ≈ ∫ f(r) r² dr`.
pub fn radial_rule(n: usize, r_m: f64) -> Vec<(f64, f64)> {
    (1..=n)
        .map(|i| {
            let t = i as f64 * PI / (n as f64 + 1.0);
            let (x, s) = (t.cos(), t.sin());
            let w = PI / (n as f64 + 1.0) * s * s;
            let (r, dr) = radial_map(x, r_m).expect("Chebyshev nodes lie inside (-1, 1)");
            (r, w / s * dr * r * r)
        })
        .collect()
}

fn becke_switch(mu: f64) -> f64 {
    let mut f = mu;
    for _ in 0..3 {
        f = 1.5 * f - 0.5 * f * f * f;
    }
    0.5 * (1.0 - f)
}

/// Becke cell weights of every atom at `point`, normalized to sum to one.
pub fn becke_weights(positions: &[Vector3<f64>], point: &Vector3<f64>) -> Vec<f64> {
    let n = positions.len();
    if n == 1 {
        return vec![1.0];
    }
    let dist: Vec<f64> = positions.iter().map(|r| (point - r).norm()).collect();
    let mut cell = vec![1.0; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let rij = (positions[i] - positions[j]).norm();
            cell[i] *= becke_switch((dist[i] - dist[j]) / rij);
        }
    }
    let total: f64 = cell.iter().sum();
    cell.iter().map(|c| c / total).collect()
}

fn angular_rule(n: usize) -> Vec<(Vector3<f64>, f64)> {
    match n {
        194 => lebedev::LEBEDEV_194.expand(),
        302 => lebedev::LEBEDEV_302.expand(),
        590 => lebedev::LEBEDEV_590.expand(),
        _ => unreachable!("quality levels only use shipped Lebedev orders"),
    }
}

fn radius_for(z: u32, opts: &GridOptions) -> Result<f64> {
    if let Some(&r) = opts.radii.get(&z) {
        return Ok(r);
    }
    match default_radius(z) {
        Some(r) => Ok(r),
        None if opts.allow_radius_fallback => {
            log::warn!("no radial mapping radius for Z={z}; using {FALLBACK_RADIUS} bohr");
            Ok(FALLBACK_RADIUS)
        }
        None => Err(Error::UnsupportedElement { z, what: "no radial mapping radius" }),
    }
}

pub fn build_grid(system: &MolecularSystem, quality: Quality) -> Result<QuadratureGrid> {
    build_grid_with(system, &quality.into())
}

pub fn build_grid_with(system: &MolecularSystem, opts: &GridOptions) -> Result<QuadratureGrid> {
    let (n_rad, n_ang) = opts.quality.counts();
    Quality::custom(n_rad, n_ang)?;
    let angular = angular_rule(n_ang);
    let positions = system.positions();
    let radii = system
        .atoms
        .iter()
        .map(|a| radius_for(a.z, opts))
        .collect::<Result<Vec<_>>>()?;
    let per_atom: Vec<Vec<(Vector3<f64>, f64)>> = (0..positions.len())
        .into_par_iter()
        .map(|a| {
            let mut pts = Vec::with_capacity(n_rad * n_ang);
            for (r, wr) in radial_rule(n_rad, radii[a]) {
                for (u, wa) in &angular {
                    let p = positions[a] + u * r;
                    let w = 4.0 * PI * wa * wr * becke_weights(&positions, &p)[a];
                    if w > 0.0 {
                        pts.push((p, w));
                    }
                }
            }
            pts
        })
        .collect();
    let mut grid = QuadratureGrid {
        points: Vec::new(),
        weights: Vec::new(),
        owners: Vec::new(),
        quality: opts.quality,
    };
    for (a, pts) in per_atom.into_iter().enumerate() {
        for (p, w) in pts {
            grid.points.push(p);
            grid.weights.push(w);
            grid.owners.push(a);
        }
    }
    Ok(grid)
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// ∫ f dV.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(&Vector3<f64>) -> f64 + Sync,
    {
        deterministic_sum(self.len(), 0.0, |i| self.weights[i] * f(&self.points[i]))
    }

    /// Writes `x y z weight owner` lines (bohr, 1-based owner).
    pub fn dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# x y z weight owner  (bohr; {} points, {} grid)", self.len(), self.quality)?;
        for ((p, w), o) in self.points.iter().zip(&self.weights).zip(&self.owners) {
            writeln!(out, "{:.16e} {:.16e} {:.16e} {:.16e} {}", p.x, p.y, p.z, w, o + 1)?;
        }
        Ok(())
    }
}

/// Sums `f(0) + … + f(n−1)` in parallel with a summation order fixed by
/// [`REDUCTION_BLOCK`]: sequential within blocks, then a pairwise tree over
/// blocks. The result is bit-identical for any number of threads.
pub fn deterministic_sum<T, F>(n: usize, zero: T, f: F) -> T
where
    T: Copy + Send + Sync + Add<Output = T>,
    F: Fn(usize) -> T + Sync,
{
    let n_blocks = n.div_ceil(REDUCTION_BLOCK);
    let partial: Vec<T> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let end = ((b + 1) * REDUCTION_BLOCK).min(n);
            (b * REDUCTION_BLOCK..end).fold(zero, |acc, i| acc + f(i))
        })
        .collect();
    pairwise(&partial, zero)
}

fn pairwise<T: Copy + Add<Output = T>>(xs: &[T], zero: T) -> T {
    match xs.len() {
        0 => zero,
        1 => xs[0],
        n => pairwise(&xs[..n / 2], zero) + pairwise(&xs[n / 2..], zero),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lebedev_orders_and_weights() {
        for n in [194, 302, 590] {
            let rule = angular_rule(n);
            assert_eq!(rule.len(), n);
            let total: f64 = rule.iter().map(|(_, w)| w).sum();
            assert!((total - 1.0).abs() < 1e-14, "{n}: {total}");
            for (u, _) in &rule {
                assert!((u.norm() - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn lebedev_integrates_low_degree_harmonics() {
        // <x²> = 1/3, <x⁴> = 1/5, <x²y²> = 1/15 over the unit sphere
        for n in [194, 302, 590] {
            let rule = angular_rule(n);
            let avg = |f: &dyn Fn(&Vector3<f64>) -> f64| rule.iter().map(|(u, w)| w * f(u)).sum::<f64>();
            assert!((avg(&|u| u.x * u.x) - 1.0 / 3.0).abs() < 1e-14);
            assert!((avg(&|u| u.z.powi(4)) - 0.2).abs() < 1e-14);
            assert!((avg(&|u| (u.x * u.y).powi(2)) - 1.0 / 15.0).abs() < 1e-14);
            assert!(avg(&|u| u.x * u.y * u.z).abs() < 1e-15);
        }
    }

    #[test]
    fn pairwise_sum_is_exact_on_integers() {
        let s = deterministic_sum(10_000, 0.0, |i| i as f64);
        assert_eq!(s, 49_995_000.0);
        assert_eq!(deterministic_sum(0, 0.0, |_| 1.0), 0.0);
    }

    #[test]
    fn quality_parses() {
        assert_eq!("fine".parse::<Quality>().unwrap(), Quality::Fine);
        assert!("ultra".parse::<Quality>().is_err());
        assert_eq!("150x590".parse::<Quality>().unwrap().counts(), (150, 590));
        assert!("150x300".parse::<Quality>().is_err());
        assert_eq!(Quality::custom(40, 194).unwrap().to_string(), "40x194");
    }
}
