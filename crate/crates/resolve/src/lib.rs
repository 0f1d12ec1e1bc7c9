//! Graded Tor over R_p by two independent routes: the two-sided reduced bar
//! complex, and a minimal free resolution tensored with the second module.

mod bar;
mod coeffs;
mod freeres;
mod pid;
mod table;
mod tor;

pub use bar::{bar_complex, bar_differential, BarComplex, BarSlice, BarWord};
pub use coeffs::{Coefficients, ModView};
pub use freeres::{free_resolution, periodic_resolution_2311, FreeModule, FreeResolution};
pub use pid::{tor_pid_cone_check, PidConeReport};
pub use table::{BigradedTable, Provenance};
pub use tor::{certified_lo, tor, tor_with, TorMethod, TorParams};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolveError {
    #[error(transparent)]
    Module(#[from] rmodule::ModuleError),
    #[error(transparent)]
    Linear(#[from] gf2core::Gf2Error),
    #[error("modules have different precisions ({0} and {1})")]
    PrecisionMismatch(u32, u32),
    #[error("degree floor {floor} reached before stage {stage}; the resolution is partial")]
    WindowExhausted { stage: usize, floor: i64, partial: Box<FreeResolution> },
    #[error("differential squares to nonzero at stage {stage}, degree {degree}")]
    NotAComplex { stage: usize, degree: i64 },
    #[error("module {0} has a nonzero Q-action")]
    NonzeroQ(&'static str),
    #[error("odd degree {0} cannot be read as a U-degree")]
    OddDegree(i64),
    #[error("empty module")]
    Empty,
}
