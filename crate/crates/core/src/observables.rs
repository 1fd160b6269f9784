//! Property tensors from spin current densities: spin shielding, hyperfine
//! coupling and the Curie magnetizability, with spin statistics and unit
//! conversions.

use std::collections::HashMap;
use std::fmt;

use nalgebra::{Matrix3, SMatrix, Vector3};

use crate::cdt::{CurrentGrid, Mode, SpinCdtSample};
use crate::constants::{
    CHI_AU_TO_PPM_CGS, C_AU, G_E, HARTREE_HZ, K_B_AU, K_B_SI, MU_B_AU, MU_B_SI, MU_N_AU,
};
use crate::data::{isotope_label, nuclear_g_factor, atomic_number};
use crate::error::{Error, Result};
use crate::grid::deterministic_sum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Ppm,
    MHz,
    PpmCm3PerMol,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Ppm => "ppm",
            Unit::MHz => "MHz",
            Unit::PpmCm3PerMol => "ppm cm^3/mol",
        })
    }
}

/// A 3×3 property with its contributions. `total` is always the exact sum
/// of `zee` and whichever of `soc` and `orbital` are present.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyTensor {
    pub total: Matrix3<f64>,
    pub zee: Matrix3<f64>,
    pub soc: Option<Matrix3<f64>>,
    pub orbital: Option<Matrix3<f64>>,
    pub unit: Unit,
    pub nucleus: Option<usize>,
    pub temperature: Option<f64>,
    pub mode: Mode,
}

pub fn iso(m: &Matrix3<f64>) -> f64 {
    m.trace() / 3.0
}

impl PropertyTensor {
    fn assemble(zee: Matrix3<f64>, soc: Option<Matrix3<f64>>, unit: Unit, mode: Mode) -> Self {
        let total = zee + soc.unwrap_or_else(Matrix3::zeros);
        PropertyTensor { total, zee, soc, orbital: None, unit, nucleus: None, temperature: None, mode }
    }

    pub fn iso(&self) -> f64 {
        iso(&self.total)
    }
}

/// How the thermal spin polarization enters the prefactors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StatisticsMode {
    /// Curie (weak-field) form S(S+1)/(3 k_B T).
    Linear,
    /// Exact Brillouin polarization at a finite field in tesla.
    Exact { field: f64 },
}

/// Spin quantum number and temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinStatistics {
    pub s: f64,
    pub t: f64,
}

impl SpinStatistics {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::DomainError(format!("temperature must be positive, got {t} K")));
        }
        if !(s >= 0.5) || (2.0 * s).fract() != 0.0 {
            return Err(Error::DomainError(format!("spin must be a positive half-integer, got {s}")));
        }
        Ok(SpinStatistics { s, t })
    }

    /// k = (2S+1)/2.
    pub fn k(&self) -> f64 {
        (2.0 * self.s + 1.0) / 2.0
    }

    /// x = g_e μ_B B / (k_B T), B in tesla.
    pub fn x(&self, b: f64) -> f64 {
        G_E * MU_B_SI * b / (K_B_SI * self.t)
    }

    /// Exact thermal ⟨S_β⟩ along the field: `−[k coth(kx) − ½ coth(x/2)]`.
    pub fn expectation(&self, b: f64) -> f64 {
        -brillouin(self.k(), self.x(b))
    }

    /// Weak-field form −S(S+1)x/3.
    pub fn expectation_linear(&self, b: f64) -> f64 {
        -self.s * (self.s + 1.0) * self.x(b) / 3.0
    }

    /// d⟨S_β⟩/dB in 1/tesla.
    pub fn derivative(&self, b: f64) -> f64 {
        let dx_db = G_E * MU_B_SI / (K_B_SI * self.t);
        -dx_db * brillouin_slope(self.k(), self.x(b))
    }

    /// Factor replacing S(S+1)/3 in the prefactors.
    fn polarization(&self, mode: StatisticsMode) -> f64 {
        match mode {
            StatisticsMode::Linear => self.s * (self.s + 1.0) / 3.0,
            StatisticsMode::Exact { field } => {
                let x = self.x(field);
                if x == 0.0 {
                    self.s * (self.s + 1.0) / 3.0
                } else {
                    -self.expectation(field) / x
                }
            }
        }
    }
}

/// Laurent coefficients of coth beyond 1/y: y/3 − y³/45 + 2y⁵/945 − ...
const COTH_SERIES: [f64; 5] = [1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0, -1.0 / 4725.0, 2.0 / 93555.0];

/// Below |k x| = 0.1 the series keeps the removable singularity at x = 0
/// free of cancellation.
const SERIES_LIMIT: f64 = 0.1;

/// k coth(kx) − ½ coth(x/2).
fn brillouin(k: f64, x: f64) -> f64 {
    if (k * x).abs() < SERIES_LIMIT {
        brillouin_series(k, x, 0)
    } else {
        k / (k * x).tanh() - 0.5 / (0.5 * x).tanh()
    }
}

/// d/dx of [`brillouin`].
fn brillouin_slope(k: f64, x: f64) -> f64 {
    if (k * x).abs() < SERIES_LIMIT {
        brillouin_series(k, x, 1)
    } else {
        0.25 * csch2(0.5 * x) - k * k * csch2(k * x)
    }
}

/// Series of [`brillouin`] (`order = 0`) or its derivative (`order = 1`).
fn brillouin_series(k: f64, x: f64, order: u8) -> f64 {
    let mut acc = 0.0;
    for (n, c) in COTH_SERIES.iter().enumerate().rev() {
        let p = 2 * (n as i32 + 1);
        let d = if order == 1 { (p - 1) as f64 } else { 1.0 };
        acc = acc * x * x + c * d * (k.powi(p) - 0.5f64.powi(p));
    }
    if order == 1 {
        acc
    } else {
        x * acc
    }
}

fn csch2(y: f64) -> f64 {
    let s = y.sinh();
    1.0 / (s * s)
}

type Moments = SMatrix<f64, 3, 6>;

/// `I[(α, β)] = ∫ ((r − R) × J^β)_α / |r − R|³`, Zeeman in columns 0..3,
/// spin-orbit in 3..6.
pub fn biot_savart_integral(cg: &CurrentGrid, center: &Vector3<f64>) -> (Matrix3<f64>, Matrix3<f64>) {
    let m = deterministic_sum(cg.len(), Moments::zeros(), |i| {
        let d = cg.points[i] - center;
        let r2 = d.norm_squared();
        let mut out = Moments::zeros();
        if r2 == 0.0 {
            return out;
        }
        let f = cg.weights[i] / (r2 * r2.sqrt());
        let s = &cg.samples[i];
        for b in 0..3 {
            out.set_column(b, &(d.cross(&s.zee[b]) * f));
            out.set_column(b + 3, &(d.cross(&s.soc[b]) * f));
        }
        out
    });
    (m.fixed_columns::<3>(0).into_owned(), m.fixed_columns::<3>(3).into_owned())
}

/// `M[(λ, μ)] = ∫ (r × J^μ)_λ`, Zeeman then spin-orbit.
pub fn moment_integral(cg: &CurrentGrid) -> (Matrix3<f64>, Matrix3<f64>) {
    let m = deterministic_sum(cg.len(), Moments::zeros(), |i| {
        let r = cg.points[i];
        let w = cg.weights[i];
        let s = &cg.samples[i];
        let mut out = Moments::zeros();
        for b in 0..3 {
            out.set_column(b, &(r.cross(&s.zee[b]) * w));
            out.set_column(b + 3, &(r.cross(&s.soc[b]) * w));
        }
        out
    });
    (m.fixed_columns::<3>(0).into_owned(), m.fixed_columns::<3>(3).into_owned())
}

/// Dimensionless shielding per unit Biot–Savart integral, in ppm.
pub fn shielding_prefactor(stats: &SpinStatistics, mode: StatisticsMode) -> f64 {
    G_E * MU_B_AU * stats.polarization(mode) / (K_B_AU * stats.t) / (C_AU * C_AU) * 1e6
}

/// Hyperfine coupling per unit Biot–Savart integral, in MHz.
pub fn hyperfine_prefactor(g_i: f64) -> f64 {
    -g_i * MU_N_AU / (C_AU * C_AU) * HARTREE_HZ * 1e-6
}

/// Spin shielding σ^{I,S} of the nucleus at `center`, in ppm.
pub fn spin_shielding(
    cg: &CurrentGrid,
    center: &Vector3<f64>,
    stats: &SpinStatistics,
    mode: StatisticsMode,
    include_soc: bool,
) -> PropertyTensor {
    let (zee, soc) = biot_savart_integral(cg, center);
    let f = shielding_prefactor(stats, mode);
    let mut t = PropertyTensor::assemble(zee * f, include_soc.then(|| soc * f), Unit::Ppm, cg.mode);
    t.temperature = Some(stats.t);
    t
}

/// Hyperfine tensor A^I of the nucleus at `center`, in MHz.
pub fn hyperfine(cg: &CurrentGrid, center: &Vector3<f64>, g_i: f64, include_soc: bool) -> PropertyTensor {
    let (zee, soc) = biot_savart_integral(cg, center);
    let f = hyperfine_prefactor(g_i);
    PropertyTensor::assemble(zee * f, include_soc.then(|| soc * f), Unit::MHz, cg.mode)
}

/// Spin magnetizability χ^S in ppm cm³/mol; the integrand is symmetrized
/// over the two field indices.
pub fn spin_magnetizability(
    cg: &CurrentGrid,
    stats: &SpinStatistics,
    mode: StatisticsMode,
    include_soc: bool,
) -> PropertyTensor {
    let (zee, soc) = moment_integral(cg);
    let f = -G_E * MU_B_AU * stats.polarization(mode) / (4.0 * K_B_AU * stats.t) * CHI_AU_TO_PPM_CGS;
    let sym = |m: Matrix3<f64>| (m + m.transpose()) * f;
    let mut t = PropertyTensor::assemble(sym(zee), include_soc.then(|| sym(soc)), Unit::PpmCm3PerMol, cg.mode);
    t.temperature = Some(stats.t);
    t
}

/// Closed-form Curie magnetizability g_e² μ_B² S(S+1)/(3 k_B T), ppm cm³/mol.
pub fn curie_magnetizability(stats: &SpinStatistics) -> f64 {
    G_E * G_E * MU_B_AU * MU_B_AU * stats.s * (stats.s + 1.0) / (3.0 * K_B_AU * stats.t) * CHI_AU_TO_PPM_CGS
}

/// Isotropic shielding-density integrand at `point` per unit prefactor:
/// `(1/3) Σ_β ((r − R) × J^β)_β / |r − R|³`.
pub fn shielding_density(s: &SpinCdtSample, point: &Vector3<f64>, center: &Vector3<f64>, include_soc: bool) -> f64 {
    let d = point - center;
    let r2 = d.norm_squared();
    if r2 == 0.0 {
        return 0.0;
    }
    let mut acc = 0.0;
    for b in 0..3 {
        let j = if include_soc { s.zee[b] + s.soc[b] } else { s.zee[b] };
        acc += d.cross(&j)[b];
    }
    acc / (3.0 * r2 * r2.sqrt())
}

/// Adds an externally computed orbital tensor to a spin tensor.
pub fn combine_with_orbital(spin: &PropertyTensor, orbital: &Matrix3<f64>, orbital_unit: Unit) -> Result<PropertyTensor> {
    if orbital_unit != spin.unit {
        return Err(Error::DomainError(format!(
            "cannot add an orbital tensor in {orbital_unit} to a spin tensor in {}",
            spin.unit
        )));
    }
    let mut t = spin.clone();
    t.orbital = Some(orbital + spin.orbital.unwrap_or_else(Matrix3::zeros));
    t.total = spin.total + orbital;
    Ok(t)
}

/// Chemical shift δ = σ_ref − σ.
pub fn chemical_shift(sigma_ref: f64, sigma: f64) -> f64 {
    sigma_ref - sigma
}

/// Nuclear g-factor for an atom. Overrides are keyed by isotope label
/// (`13C`) or element symbol (`C`); the isotope label wins.
pub fn resolve_g_factor(z: u32, a: u32, overrides: &HashMap<String, f64>) -> Result<f64> {
    let label = isotope_label(z, a);
    if let Some(&g) = overrides.get(&label) {
        return Ok(g);
    }
    for (key, &g) in overrides {
        if atomic_number(key) == Some(z) {
            return Ok(g);
        }
    }
    nuclear_g_factor(z, a).ok_or(Error::MissingNuclearData(label))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brillouin_branches_join() {
        for k in [1.0, 1.5, 3.0] {
            let x = SERIES_LIMIT / k;
            let closed = brillouin(k, x);
            let series = brillouin_series(k, x, 0);
            assert!((closed - series).abs() < 1e-12 * series.abs(), "{k}: {closed} {series}");
            let closed = brillouin_slope(k, x);
            let series = brillouin_series(k, x, 1);
            assert!((closed - series).abs() < 1e-12 * series.abs(), "{k}: {closed} {series}");
        }
    }

    #[test]
    fn overrides_by_symbol_and_label() {
        let mut o = HashMap::new();
        assert!(matches!(resolve_g_factor(6, 12, &o), Err(Error::MissingNuclearData(l)) if l == "12C"));
        o.insert("C".to_string(), 1.4048236);
        assert_eq!(resolve_g_factor(6, 12, &o).unwrap(), 1.4048236);
        o.insert("12C".to_string(), 0.5);
        assert_eq!(resolve_g_factor(6, 12, &o).unwrap(), 0.5);
        assert_eq!(resolve_g_factor(1, 1, &HashMap::new()).unwrap(), 5.58569468);
    }
}
