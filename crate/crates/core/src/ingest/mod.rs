//! Readers for formatted checkpoint files and the generalized density format.

mod fchk;
mod generalized;

pub use fchk::{parse_fchk, read_fchk, CHECKPOINT_ORDER};
pub use generalized::{
    parse_generalized_density, read_generalized_density, write_generalized_density,
};
