//! Effective potential, finite Gaussian nuclei and the ZORA factor
//! `K = c² / (2c² − V)` (atomic units, m_e = e = 1).
//!
//! Each atom contributes a screening term fitted by error functions and a
//! Gaussian nuclear charge:
//! `V_I(r) = −Σ_i c_i erf(√α_i d)/d − Z_I erf(√ζ_I d)/d`, `d = |r − R_I|`.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::constants::{BOHR_ANGSTROM, C_AU};
use crate::data::{parse_field, table_lines, ERF_FIT_V1};
use crate::error::{Error, Result};
use crate::system::MolecularSystem;

const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Per-element erf-fit parameters `(c_i, α_i)`.
#[derive(Debug, Clone, Default)]
pub struct ErfFitTable {
    fits: HashMap<u32, Vec<(f64, f64)>>,
}

impl ErfFitTable {
    /// The shipped H–Xe table.
    pub fn shipped() -> Self {
        Self::parse(ERF_FIT_V1).expect("shipped erf-fit table is valid")
    }

    /// Parses the `format erf-fit 1` schema: `element <Z> <k>` followed by
    /// k lines `<c_i> <alpha_i>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut fits = HashMap::new();
        let mut lines = table_lines(text, "erf-fit", 1)?;
        while let Some((n, toks)) = lines.next() {
            if toks.len() != 3 || toks[0] != "element" {
                return Err(Error::MalformedFile(format!("line {n}: expected `element <Z> <k>`")));
            }
            let z: u32 = parse_field(toks[1], n)?;
            let k: usize = parse_field(toks[2], n)?;
            let mut terms = Vec::with_capacity(k);
            for _ in 0..k {
                let Some((m, t)) = lines.next() else {
                    return Err(Error::MalformedFile(format!("element {z}: truncated record")));
                };
                if t.len() != 2 {
                    return Err(Error::MalformedFile(format!("line {m}: expected `<c> <alpha>`")));
                }
                let alpha: f64 = parse_field(t[1], m)?;
                if !(alpha > 0.0) {
                    return Err(Error::MalformedFile(format!("line {m}: exponent must be positive")));
                }
                terms.push((parse_field(t[0], m)?, alpha));
            }
            fits.insert(z, terms);
        }
        Ok(ErfFitTable { fits })
    }

    pub fn get(&self, z: u32) -> Option<&[(f64, f64)]> {
        self.fits.get(&z).map(Vec::as_slice)
    }

    /// Adds or replaces the fit for one element.
    pub fn insert(&mut self, z: u32, terms: Vec<(f64, f64)>) {
        self.fits.insert(z, terms);
    }
}

/// Gaussian nuclear exponent (bohr⁻²) for mass number `a`:
/// `ζ = 1.5e10 · (a₀ / (0.836 A^{1/3} + 0.570))²` with a₀ in ångström.
pub fn zeta_for(a: u32) -> f64 {
    let denom = 0.836 * (a as f64).cbrt() + 0.570;
    1.5e10 * (BOHR_ANGSTROM / denom).powi(2)
}

/// `K = c²/(2c² − V)`.
pub fn scaling_factor(v: f64, c: f64) -> Result<f64> {
    let denom = 2.0 * c * c - v;
    if !(denom > 0.0) {
        return Err(Error::DomainError(format!(
            "ZORA denominator 2c² − V = {denom:e} is not positive"
        )));
    }
    Ok(c * c / denom)
}

#[derive(Debug, Clone)]
struct Site {
    position: Vector3<f64>,
    z: f64,
    fit: Vec<(f64, f64)>,
    zeta: f64,
}

/// Potential and ZORA quantities at one point.
#[derive(Debug, Clone)]
pub struct ZoraPoint {
    pub v: f64,
    pub k: f64,
    /// ∇V^I for every nucleus.
    pub grad_v: Vec<Vector3<f64>>,
    pub grad_v_total: Vector3<f64>,
    /// ∇K = K² ∇V / c².
    pub grad_k: Vector3<f64>,
    pub inv_c2: f64,
}

#[derive(Debug, Clone)]
pub struct ZoraModel {
    sites: Vec<Site>,
    /// Speed of light (atomic units).
    pub c: f64,
    /// Multiplies V and ∇V; 1 for the physical potential. Used to approach
    /// the non-relativistic limit continuously.
    pub potential_scale: f64,
}

/// erf(a d)/d, finite at d = 0.
fn erf_over_r(a: f64, d: f64) -> f64 {
    if d == 0.0 {
        TWO_OVER_SQRT_PI * a
    } else {
        libm::erf(a * d) / d
    }
}

/// (erf(a d)/d² − 2a/√π · e^{−a²d²}/d)/d, the radial gradient factor
/// divided by d; series below a d = 0.05 to avoid cancellation.
fn grad_factor(a: f64, d: f64) -> f64 {
    let x = a * d;
    if x < 0.05 {
        let x2 = x * x;
        a * a * a * TWO_OVER_SQRT_PI
            * (2.0 / 3.0 + x2 * (-0.4 + x2 * (1.0 / 7.0 + x2 * (-1.0 / 27.0 + x2 / 132.0))))
    } else {
        (libm::erf(x) / (d * d) - TWO_OVER_SQRT_PI * a * (-x * x).exp() / d) / d
    }
}

impl ZoraModel {
    pub fn new(system: &MolecularSystem) -> Result<Self> {
        Self::with_table(system, &ErfFitTable::shipped())
    }

    pub fn with_table(system: &MolecularSystem, table: &ErfFitTable) -> Result<Self> {
        let sites = system
            .atoms
            .iter()
            .map(|a| {
                let fit = table
                    .get(a.z)
                    .ok_or(Error::UnsupportedElement { z: a.z, what: "no erf-fit potential" })?;
                Ok(Site {
                    position: a.position,
                    z: a.z as f64,
                    fit: fit.to_vec(),
                    zeta: zeta_for(a.mass_number),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ZoraModel { sites, c: C_AU, potential_scale: 1.0 })
    }

    pub fn n_nuclei(&self) -> usize {
        self.sites.len()
    }

    pub fn zeta(&self, nucleus: usize) -> f64 {
        self.sites[nucleus].zeta
    }

    /// V^I(r) for one nucleus.
    pub fn potential_of(&self, nucleus: usize, point: &Vector3<f64>) -> f64 {
        let s = &self.sites[nucleus];
        let d = (point - s.position).norm();
        let screening: f64 = s.fit.iter().map(|&(c, a)| c * erf_over_r(a.sqrt(), d)).sum();
        -self.potential_scale * (screening + s.z * erf_over_r(s.zeta.sqrt(), d))
    }

    /// Total effective potential V(r).
    pub fn potential(&self, point: &Vector3<f64>) -> f64 {
        (0..self.sites.len()).map(|i| self.potential_of(i, point)).sum()
    }

    /// ∇V^I(r) for one nucleus.
    pub fn potential_gradient_of(&self, nucleus: usize, point: &Vector3<f64>) -> Vector3<f64> {
        let s = &self.sites[nucleus];
        let d = point - s.position;
        let r = d.norm();
        let screening: f64 = s.fit.iter().map(|&(c, a)| c * grad_factor(a.sqrt(), r)).sum();
        d * (self.potential_scale * (screening + s.z * grad_factor(s.zeta.sqrt(), r)))
    }

    /// Per-nucleus gradients and their sum.
    pub fn potential_gradient(&self, point: &Vector3<f64>) -> (Vec<Vector3<f64>>, Vector3<f64>) {
        let per: Vec<_> = (0..self.sites.len()).map(|i| self.potential_gradient_of(i, point)).collect();
        let total = per.iter().fold(Vector3::zeros(), |a, g| a + g);
        (per, total)
    }

    pub fn scaling_factor(&self, v: f64) -> Result<f64> {
        scaling_factor(v, self.c)
    }

    pub fn evaluate(&self, point: &Vector3<f64>) -> Result<ZoraPoint> {
        let v = self.potential(point);
        let k = self.scaling_factor(v)?;
        let (grad_v, grad_v_total) = self.potential_gradient(point);
        let inv_c2 = 1.0 / (self.c * self.c);
        Ok(ZoraPoint { v, k, grad_k: grad_v_total * (k * k * inv_c2), grad_v, grad_v_total, inv_c2 })
    }
}

/// Potential at the nucleus for a single atom:
/// `−Σ 2 c_i √(α_i/π) − 2 Z √(ζ/π)`.
pub fn potential_at_nucleus(fit: &[(f64, f64)], z: f64, zeta: f64) -> f64 {
    -fit.iter().map(|&(c, a)| 2.0 * c * (a / PI).sqrt()).sum::<f64>() - 2.0 * z * (zeta / PI).sqrt()
}
