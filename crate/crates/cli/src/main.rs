//! `spincurrent`: spin current densities and the paramagnetic properties
//! they carry, from a formatted checkpoint file.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "spincurrent", version, about = "Spin current densities of open-shell molecules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spin contribution to nuclear shielding tensors (ppm).
    Shielding(ShieldingArgs),
    /// Hyperfine coupling tensors (MHz).
    Hyperfine(HyperfineArgs),
    /// Spin (Curie) magnetizability (ppm cm^3/mol).
    Magnetizability(MagnetizabilityArgs),
    /// Cube files of spin density, spin current or shielding density.
    Map(MapArgs),
    /// Finite-difference continuity check of the spin currents.
    Diagnose(DiagnoseArgs),
    /// Monomer-dimer equilibrium and mixture magnetizability.
    Thermo(ThermoArgs),
}

/// Options shared by every command that reads a density.
#[derive(Args, Debug, Clone)]
pub struct Common {
    /// TOML file with defaults for any of these options.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Formatted checkpoint file (basis, geometry, densities).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generalized density file replacing the checkpoint densities.
    #[arg(long)]
    pub density: Option<PathBuf>,
    /// nr, sr or sr+soc [default: sr].
    #[arg(long)]
    pub mode: Option<String>,
    /// Temperature in kelvin [default: 298.15].
    #[arg(long)]
    pub temp: Option<f64>,
    /// coarse, default, fine or RADIALxANGULAR [default: default].
    #[arg(long)]
    pub grid: Option<String>,
    /// Spin quantum number S [default: (n_alpha - n_beta)/2].
    #[arg(long)]
    pub spin: Option<f64>,
    /// Worker threads [default: all cores].
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output directory [default: .].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Nuclear g-factor override, e.g. 17O=-0.757516 or O=-0.757516.
    #[arg(long, value_name = "ISOTOPE=VALUE")]
    pub gi: Vec<String>,
    /// Radial mapping radius override in bohr, e.g. Fe=1.4.
    #[arg(long, value_name = "ELEMENT=BOHR")]
    pub radius: Vec<String>,
    /// Use 1 bohr for elements missing a radial mapping radius.
    #[arg(long)]
    pub allow_radius_fallback: bool,
    /// linear or exact [default: linear].
    #[arg(long)]
    pub statistics: Option<String>,
    /// Field in tesla for exact statistics [default: 1].
    #[arg(long)]
    pub field_strength: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct ShieldingArgs {
    #[command(flatten)]
    pub common: Common,
    /// 1-based nuclei [default: all].
    #[arg(long, value_delimiter = ',')]
    pub nuclei: Vec<usize>,
    /// Add the spin-orbit current, which diverges near the nuclei.
    #[arg(long)]
    pub with_soc_shielding: bool,
    /// Orbital shielding per nucleus: lines `<nucleus> <iso>` or `<nucleus> <9 components>`.
    #[arg(long)]
    pub orbital: Option<PathBuf>,
    /// Reference shielding for chemical shifts, ppm.
    #[arg(long)]
    pub reference: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct HyperfineArgs {
    #[command(flatten)]
    pub common: Common,
    /// 1-based nuclei [default: all].
    #[arg(long, value_delimiter = ',')]
    pub nuclei: Vec<usize>,
    /// Add the spin-orbit current, which diverges near the nuclei.
    #[arg(long)]
    pub with_soc_shielding: bool,
}

#[derive(Args, Debug, Clone)]
pub struct MagnetizabilityArgs {
    #[command(flatten)]
    pub common: Common,
    /// Leave the spin-orbit current out of the total.
    #[arg(long)]
    pub no_soc: bool,
    /// Orbital magnetizability: one line with 1 (iso) or 9 numbers.
    #[arg(long)]
    pub orbital: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct MapArgs {
    #[command(flatten)]
    pub common: Common,
    /// spin-density, spin-current or shielding-density [default: spin-density].
    #[arg(long)]
    pub field: Option<String>,
    /// Spin axis of the spin-current map [default: z].
    #[arg(long)]
    pub axis: Option<String>,
    /// Box corners x0,y0,z0,x1,y1,z1 in bohr [default: molecule + 4 bohr].
    #[arg(long = "box", value_delimiter = ',', allow_hyphen_values = true)]
    pub bounds: Vec<f64>,
    /// Voxel spacing in bohr [default: 0.2].
    #[arg(long)]
    pub spacing: Option<f64>,
    /// Nucleus of the shielding-density map.
    #[arg(long, value_delimiter = ',')]
    pub nuclei: Vec<usize>,
    /// Include the spin-orbit current in the shielding density.
    #[arg(long)]
    pub with_soc_shielding: bool,
}

#[derive(Args, Debug, Clone)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of sample points [default: 50].
    #[arg(long)]
    pub points: Option<usize>,
    /// Finite-difference step in bohr [default: 1e-4].
    #[arg(long)]
    pub step: Option<f64>,
    /// Seed of the sample points [default: 1].
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct ThermoArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Reaction free energy of dimer -> 2 monomers, kJ/mol.
    #[arg(long, allow_hyphen_values = true)]
    pub delta_g: Option<f64>,
    /// Equilibrium constant, instead of --delta-g.
    #[arg(long)]
    pub kp: Option<f64>,
    /// Temperature in kelvin [default: 298.15].
    #[arg(long)]
    pub temp: Option<f64>,
    /// Total pressure in atm [default: 1].
    #[arg(long)]
    pub pressure: Option<f64>,
    /// Monomer magnetizability, ppm cm^3/mol.
    #[arg(long, allow_hyphen_values = true)]
    pub chi_monomer: Option<f64>,
    /// Dimer magnetizability, ppm cm^3/mol.
    #[arg(long, allow_hyphen_values = true)]
    pub chi_dimer: Option<f64>,
    /// Output directory [default: .].
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Shielding(a) => commands::shielding(a),
        Command::Hyperfine(a) => commands::hyperfine(a),
        Command::Magnetizability(a) => commands::magnetizability(a),
        Command::Map(a) => commands::map(a),
        Command::Diagnose(a) => commands::diagnose(a),
        Command::Thermo(a) => commands::thermo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", format!("{e:#}").replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
