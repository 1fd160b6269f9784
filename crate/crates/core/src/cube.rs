//! Gaussian cube files and volumetric sampling on rectangular boxes.

use std::io::Write;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::system::MolecularSystem;

/// Axis-aligned box sampled at a uniform spacing (bohr).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubeBox {
    pub origin: Vector3<f64>,
    pub counts: [usize; 3],
    pub spacing: f64,
}

impl CubeBox {
    /// Box spanning `[lo, hi]` inclusive of both ends where the spacing fits.
    pub fn from_bounds(lo: Vector3<f64>, hi: Vector3<f64>, spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) || (0..3).any(|k| !(hi[k] > lo[k])) {
            return Err(Error::DomainError("cube box needs hi > lo and a positive spacing".into()));
        }
        let counts = std::array::from_fn(|k| ((hi[k] - lo[k]) / spacing).floor() as usize + 1);
        Ok(CubeBox { origin: lo, counts, spacing })
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn voxel_volume(&self) -> f64 {
        self.spacing.powi(3)
    }

    /// Point of flat index `i` in x-major, z-fastest order.
    pub fn point(&self, i: usize) -> Vector3<f64> {
        let [_, ny, nz] = self.counts;
        let (ix, iy, iz) = (i / (ny * nz), (i / nz) % ny, i % nz);
        self.origin + Vector3::new(ix as f64, iy as f64, iz as f64) * self.spacing
    }

    pub fn contains(&self, p: &Vector3<f64>) -> bool {
        (0..3).all(|k| {
            let hi = self.origin[k] + (self.counts[k] - 1) as f64 * self.spacing;
            p[k] >= self.origin[k] && p[k] <= hi
        })
    }

    /// Evaluates `f` at every voxel in file order.
    pub fn sample<F>(&self, f: F) -> Vec<f64>
    where
        F: Fn(&Vector3<f64>) -> f64 + Sync,
    {
        (0..self.len()).into_par_iter().map(|i| f(&self.point(i))).collect()
    }
}

/// Writes one scalar field. `comments` fills the two header lines.
pub fn write_cube<W: Write>(
    mut out: W,
    comments: [&str; 2],
    system: &MolecularSystem,
    cube: &CubeBox,
    values: &[f64],
) -> std::io::Result<()> {
    assert_eq!(values.len(), cube.len(), "value count must match the box");
    writeln!(out, "{}", comments[0])?;
    writeln!(out, "{}", comments[1])?;
    let o = cube.origin;
    writeln!(out, "{:5}{:12.6}{:12.6}{:12.6}", system.atoms.len(), o.x, o.y, o.z)?;
    for k in 0..3 {
        let mut axis = [0.0; 3];
        axis[k] = cube.spacing;
        writeln!(out, "{:5}{:12.6}{:12.6}{:12.6}", cube.counts[k], axis[0], axis[1], axis[2])?;
    }
    for a in &system.atoms {
        let p = a.position;
        writeln!(out, "{:5}{:12.6}{:12.6}{:12.6}{:12.6}", a.z, a.z as f64, p.x, p.y, p.z)?;
    }
    for row in values.chunks(cube.counts[2]) {
        for (i, v) in row.iter().enumerate() {
            write!(out, " {v:12.5E}")?;
            if i % 6 == 5 || i + 1 == row.len() {
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
