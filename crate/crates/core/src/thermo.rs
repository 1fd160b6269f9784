//! Monomer–dimer equilibrium 2M ⇌ D seen from the dimer side
//! (D ⇌ 2M, e.g. N₂O₄ ⇌ 2 NO₂) and the magnetizability of the mixture.

use crate::constants::GAS_CONSTANT;
use crate::error::{Error, Result};

/// `K_p = exp(−ΔG/(RT))` with ΔG in J/mol, referenced to 1 atm.
pub fn equilibrium_constant(delta_g: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::DomainError(format!("temperature must be positive, got {t} K")));
    }
    Ok((-delta_g / (GAS_CONSTANT * t)).exp())
}

/// Degree of dissociation `α = sqrt(K_p/(4P + K_p))`, P in atm.
pub fn dissociation_degree(kp: f64, p_tot: f64) -> Result<f64> {
    if !(kp >= 0.0) || !(p_tot > 0.0) {
        return Err(Error::DomainError(format!("need K_p ≥ 0 and P > 0, got {kp}, {p_tot}")));
    }
    if kp.is_infinite() {
        return Ok(1.0);
    }
    Ok((kp / (4.0 * p_tot + kp)).sqrt())
}

/// Mixture magnetizability per mole of monomer units:
/// `α χ_monomer + (1 − α) χ_dimer / 2`.
pub fn mixture_chi(alpha: f64, chi_monomer: f64, chi_dimer: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::DomainError(format!("degree of dissociation {alpha} outside [0, 1]")));
    }
    Ok(alpha * chi_monomer + (1.0 - alpha) * chi_dimer / 2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumModel {
    /// J/mol.
    pub delta_g: f64,
    pub t: f64,
    /// atm.
    pub p_tot: f64,
    pub chi_monomer: f64,
    pub chi_dimer: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumResult {
    pub kp: f64,
    pub alpha: f64,
    pub chi_mix: f64,
}

impl EquilibriumModel {
    pub fn solve(&self) -> Result<EquilibriumResult> {
        let kp = equilibrium_constant(self.delta_g, self.t)?;
        let alpha = dissociation_degree(kp, self.p_tot)?;
        let chi_mix = mixture_chi(alpha, self.chi_monomer, self.chi_dimer)?;
        Ok(EquilibriumResult { kp, alpha, chi_mix })
    }
}
