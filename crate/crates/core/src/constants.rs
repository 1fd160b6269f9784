//! Physical constants. Everything inside the library is in Hartree atomic
//! units; SI values are kept only for the conversions done in `observables`
//! and `thermo`.

/// Speed of light in atomic units.
pub const C_AU: f64 = 137.035999084;
/// Free-electron g-factor (magnitude).
pub const G_E: f64 = 2.00231930436256;
/// Bohr magneton in atomic units.
pub const MU_B_AU: f64 = 0.5;
/// Proton-to-electron mass ratio.
pub const PROTON_ELECTRON_MASS_RATIO: f64 = 1836.15267343;
/// Nuclear magneton in atomic units.
pub const MU_N_AU: f64 = 0.5 / PROTON_ELECTRON_MASS_RATIO;
/// Boltzmann constant in hartree per kelvin.
pub const K_B_AU: f64 = 3.166811563e-6;

/// Bohr radius in angstrom.
pub const BOHR_ANGSTROM: f64 = 0.529177210903;
/// Hartree energy divided by the Planck constant, in Hz.
pub const HARTREE_HZ: f64 = 6.579683920502e15;
/// Atomic unit of magnetizability, J/T^2.
pub const MAGNETIZABILITY_AU_SI: f64 = 7.8910366008e-29;
/// Avogadro constant, 1/mol.
pub const AVOGADRO: f64 = 6.02214076e23;

pub const MU_B_SI: f64 = 9.2740100783e-24;
pub const K_B_SI: f64 = 1.380649e-23;
/// Molar gas constant, J/(mol K).
pub const GAS_CONSTANT: f64 = 8.31446;

/// Molar cgs magnetizability in ppm cm^3/mol per atomic unit of molecular
/// magnetizability: chi_cgs = N_A * xi_SI * 1e5 (the 1e5 folds mu0/4pi,
/// m^3 -> cm^3 and the ppm scale).
pub const CHI_AU_TO_PPM_CGS: f64 = MAGNETIZABILITY_AU_SI * AVOGADRO * 1.0e5;
