//! Spin current density tensors: the current induced per unit spin along
//! each axis β, split into a Zeeman-magnetization term and a spin-orbit
//! term (atomic units, e = m_e = ħ = 1):
//!
//! `J_zee^β = −g_e K ∇×(Q_S^β ê_β)`,
//! `J_soc^β = −(2/c²) K² Σ_I Q_S^β ê_β × ∇V^I`.
//!
//! The non-relativistic mode fixes K = 1/2 while keeping the regularized
//! potential gradient in the spin-orbit term.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use rayon::prelude::*;

use crate::constants::G_E;
use crate::error::{Error, Result};
use crate::field::{curl_along_axis, ReducedSample, ReducedSource};
use crate::grid::QuadratureGrid;
use crate::zora::{ZoraModel, ZoraPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// K = 1/2 everywhere.
    Nr,
    /// Scalar-relativistic K(r); transverse spin densities ignored.
    Sr,
    /// Scalar-relativistic K(r) with the transverse deviation densities
    /// of a spin-orbit coupled ground state.
    SrSoc,
}

impl Mode {
    pub fn uses_zora(self) -> bool {
        self != Mode::Nr
    }

    pub fn uses_transverse_spin(self) -> bool {
        self == Mode::SrSoc
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nr" => Ok(Mode::Nr),
            "sr" => Ok(Mode::Sr),
            "sr+soc" | "srsoc" | "soc" => Ok(Mode::SrSoc),
            _ => Err(Error::DomainError(format!("unknown mode `{s}` (nr, sr, sr+soc)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Nr => "nr",
            Mode::Sr => "sr",
            Mode::SrSoc => "sr+soc",
        })
    }
}

/// `zee[β]`, `soc[β]`: current vectors for unit spin along axis β.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCdtSample {
    pub zee: [Vector3<f64>; 3],
    pub soc: [Vector3<f64>; 3],
}

impl SpinCdtSample {
    pub fn zero() -> Self {
        SpinCdtSample { zee: [Vector3::zeros(); 3], soc: [Vector3::zeros(); 3] }
    }
}

fn kinetic_factor(zora: &ZoraPoint, mode: Mode) -> f64 {
    if mode.uses_zora() {
        zora.k
    } else {
        0.5
    }
}

/// Both spin current tensors at one point.
pub fn eval_spin_cdt(reduced: &ReducedSample, zora: &ZoraPoint, mode: Mode) -> SpinCdtSample {
    let k = kinetic_factor(zora, mode);
    let soc_pref = -2.0 * zora.inv_c2 * k * k;
    let mut out = SpinCdtSample::zero();
    for b in 0..3 {
        out.zee[b] = curl_along_axis(&reduced.grad[b], b) * (-G_E * k);
        out.soc[b] = Vector3::ith(b, reduced.q[b]).cross(&zora.grad_v_total) * soc_pref;
    }
    out
}

/// Spin-orbit tensor split by nucleus; the partials sum to `soc`.
pub fn soc_partials(reduced: &ReducedSample, zora: &ZoraPoint, mode: Mode) -> Vec<[Vector3<f64>; 3]> {
    let k = kinetic_factor(zora, mode);
    let soc_pref = -2.0 * zora.inv_c2 * k * k;
    zora.grad_v
        .iter()
        .map(|g| std::array::from_fn(|b| Vector3::ith(b, reduced.q[b]).cross(g) * soc_pref))
        .collect()
}

/// Everything needed to evaluate spin currents at arbitrary points.
pub struct CurrentContext<'a> {
    pub zora: &'a ZoraModel,
    pub source: &'a dyn ReducedSource,
    pub mode: Mode,
}

impl CurrentContext<'_> {
    pub fn zora_at(&self, point: &Vector3<f64>) -> Result<ZoraPoint> {
        if self.mode.uses_zora() {
            self.zora.evaluate(point)
        } else {
            let (grad_v, grad_v_total) = self.zora.potential_gradient(point);
            Ok(ZoraPoint {
                v: 0.0,
                k: 0.5,
                grad_v,
                grad_v_total,
                grad_k: Vector3::zeros(),
                inv_c2: 1.0 / (self.zora.c * self.zora.c),
            })
        }
    }

    pub fn sample(&self, point: &Vector3<f64>) -> Result<SpinCdtSample> {
        let zora = self.zora_at(point)?;
        Ok(eval_spin_cdt(&self.source.reduced_at(point), &zora, self.mode))
    }
}

/// Normalized divergences `|∇·J| / max|J|` (1/bohr) for each β and term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceReport {
    pub zee: [f64; 3],
    pub soc: [f64; 3],
}

impl DivergenceReport {
    pub fn max_zee(&self) -> f64 {
        self.zee.iter().cloned().fold(0.0, f64::max)
    }

    pub fn max_soc(&self) -> f64 {
        self.soc.iter().cloned().fold(0.0, f64::max)
    }
}

/// Fourth-order central-difference divergence of both current tensors at
/// `point` with step `h`, each normalized by the largest current magnitude
/// over the stencil.
pub fn divergence_diagnostic(ctx: &CurrentContext, point: &Vector3<f64>, h: f64) -> Result<DivergenceReport> {
    let offsets = [(-2.0, 1.0 / 12.0), (-1.0, -8.0 / 12.0), (1.0, 8.0 / 12.0), (2.0, -1.0 / 12.0)];
    let mut div = SpinCdtSample::zero();
    let mut scale_zee = [0.0f64; 3];
    let mut scale_soc = [0.0f64; 3];
    let mut track = |s: &SpinCdtSample| {
        for b in 0..3 {
            scale_zee[b] = scale_zee[b].max(s.zee[b].norm());
            scale_soc[b] = scale_soc[b].max(s.soc[b].norm());
        }
    };
    track(&ctx.sample(point)?);
    for axis in 0..3 {
        for &(step, c) in &offsets {
            let s = ctx.sample(&(point + Vector3::ith(axis, step * h)))?;
            track(&s);
            for b in 0..3 {
                div.zee[b][axis] += c * s.zee[b][axis] / h;
                div.soc[b][axis] += c * s.soc[b][axis] / h;
            }
        }
    }
    let norm = |d: &Vector3<f64>, scale: f64| if scale > 0.0 { d.sum().abs() / scale } else { 0.0 };
    Ok(DivergenceReport {
        zee: std::array::from_fn(|b| norm(&div.zee[b], scale_zee[b])),
        soc: std::array::from_fn(|b| norm(&div.soc[b], scale_soc[b])),
    })
}

/// Spin current tensors tabulated on a quadrature grid.
#[derive(Debug, Clone)]
pub struct CurrentGrid {
    pub points: Vec<Vector3<f64>>,
    pub weights: Vec<f64>,
    pub samples: Vec<SpinCdtSample>,
    pub mode: Mode,
}

impl CurrentGrid {
    pub fn build(grid: &QuadratureGrid, ctx: &CurrentContext) -> Result<Self> {
        let samples = grid.points.par_iter().map(|p| ctx.sample(p)).collect::<Result<Vec<_>>>()?;
        Ok(CurrentGrid {
            points: grid.points.clone(),
            weights: grid.weights.clone(),
            samples,
            mode: ctx.mode,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
