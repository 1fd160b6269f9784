//! Wiring from an ingested density to spin currents on a grid.

use crate::cdt::{CurrentContext, CurrentGrid, Mode};
use crate::error::Result;
use crate::field::{build_reduced, DensityField, DensitySource, ReducedSpinDensity};
use crate::grid::{build_grid_with, GridOptions, QuadratureGrid};
use crate::system::{MolecularSystem, SpinResolvedDensity};
use crate::zora::{ErfFitTable, ZoraModel};

#[derive(Debug, Clone)]
pub struct PipelineOptions {
    pub mode: Mode,
    pub grid: GridOptions,
    /// Replaces the shipped erf-fit table when set.
    pub erf_table: Option<ErfFitTable>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { mode: Mode::Sr, grid: GridOptions::default(), erf_table: None }
    }
}

/// A molecule with its grid, potential model and reduced spin densities.
pub struct Prepared {
    pub system: MolecularSystem,
    pub grid: QuadratureGrid,
    pub zora: ZoraModel,
    pub source: DensitySource,
    pub mode: Mode,
}

impl Prepared {
    pub fn new(system: MolecularSystem, density: &SpinResolvedDensity, opts: &PipelineOptions) -> Result<Self> {
        let field = DensityField::new(&system, density)?;
        match (opts.mode.uses_transverse_spin(), field.is_collinear()) {
            (true, true) => log::warn!(
                "mode {} with a collinear density: transverse deviations are zero",
                opts.mode
            ),
            (false, false) => log::warn!(
                "mode {} ignores the transverse spin matrices of this density",
                opts.mode
            ),
            _ => {}
        }
        let grid = build_grid_with(&system, &opts.grid)?;
        let zora = match &opts.erf_table {
            Some(t) => ZoraModel::with_table(&system, t)?,
            None => ZoraModel::new(&system)?,
        };
        let reduced = build_reduced(&field, &grid)?;
        log::info!(
            "{} grid points; electrons {:.8}; S_eff {:.8}",
            grid.len(),
            reduced.electrons,
            reduced.s_eff
        );
        let source = DensitySource { field, reduced, include_delta: opts.mode.uses_transverse_spin() };
        Ok(Prepared { system, grid, zora, source, mode: opts.mode })
    }

    pub fn reduced(&self) -> &ReducedSpinDensity {
        &self.source.reduced
    }

    pub fn context(&self) -> CurrentContext<'_> {
        CurrentContext { zora: &self.zora, source: &self.source, mode: self.mode }
    }

    pub fn current_grid(&self) -> Result<CurrentGrid> {
        CurrentGrid::build(&self.grid, &self.context())
    }
}
