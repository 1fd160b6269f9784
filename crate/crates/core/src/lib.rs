//! Spin current densities of open-shell molecules and the paramagnetic
//! properties they carry: spin contributions to nuclear shielding,
//! hyperfine coupling tensors and the Curie magnetizability.
//!
//! The pipeline is: [`ingest`] a density, build a [`grid`], evaluate
//! reduced spin densities ([`field`]) and the ZORA factor ([`zora`]),
//! tabulate spin currents ([`cdt`]) and integrate them ([`observables`]).
//! [`pipeline::Prepared`] wires the common path together.

pub mod basis;
pub mod cdt;
pub mod constants;
pub mod cube;
pub mod data;
pub mod error;
pub mod field;
pub mod grid;
pub mod ingest;
pub mod observables;
pub mod pipeline;
pub mod system;
pub mod thermo;
pub mod zora;

pub use cdt::{CurrentContext, CurrentGrid, Mode};
pub use error::{Error, Result};
pub use grid::{build_grid, Quality, QuadratureGrid};
pub use observables::{PropertyTensor, SpinStatistics, StatisticsMode, Unit};
pub use pipeline::{PipelineOptions, Prepared};
pub use system::{Atom, BasisShell, MolecularSystem, SpinResolvedDensity};
