//! Spectral sequences of filtered F₂ complexes: exact page computation, the
//! Eilenberg-Moore instance on M ⊠ N, hypothesized differentials as rank
//! bookkeeping, and the Massey-product description of d₂.

mod em;
mod filtered;
mod massey;
mod page;

pub use em::{em_ss, homology_module, E2Comparison, EmSpectralSequence};
pub use filtered::FilteredComplex;
pub use massey::{massey_differential_check, module_action_check, ActionCheck, MasseyCheck, MasseyOutcome};
pub use page::{
    apply_hypothesized, apply_scenario, e_infty_vs_target, shipped_scenario, Arrow, Convention, ConvergenceReport, DifferentialPattern, Page, PatternEntry,
    Provenance, Scenario,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SsqError {
    #[error("differential raises filtration on basis element {0}")]
    Filtration(usize),
    #[error("levels and basis have different lengths")]
    Shape,
    #[error("E^{r}: page dimension at {cell:?} is {found}, homology of the previous page gives {expected}")]
    Inconsistent { r: usize, cell: (i64, i64), found: usize, expected: usize },
    #[error("pattern for d_{pattern} applied to E^{page}")]
    WrongPage { pattern: usize, page: usize },
    #[error("entry {from:?} -> {to:?} has bidegree {found:?}, the page convention requires {expected:?}")]
    Bidegree { from: (i64, i64), to: (i64, i64), found: (i64, i64), expected: (i64, i64) },
    #[error("infeasible rank at {cell:?}: {used} > {available}")]
    Infeasible { cell: (i64, i64), used: usize, available: usize },
    #[error("differential touches protected cell {0:?}")]
    Protected((i64, i64)),
    #[error(transparent)]
    Box(#[from] boxtensor::BoxError),
    #[error(transparent)]
    AInf(#[from] ainf::AInfError),
    #[error(transparent)]
    Module(#[from] rmodule::ModuleError),
    #[error("{0}")]
    Unsupported(String),
    #[error("pattern file: {0}")]
    Json(String),
}
