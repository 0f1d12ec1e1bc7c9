//! Graded modules over R = F[[V]][Q]/(Q³), stored as finite windows of
//! F[V]/(V^p)-towers together with their V- and Q-actions.

mod catalogue;
mod inequalities;
mod module;
mod tensor;

pub use catalogue::{catalogue, catalogue_names, CatalogueEntry, CorrectionTerms, QLink};
pub use inequalities::{check_sum_inequalities, InequalityLine, InequalityReport};
pub use module::{ActionTable, GradedModule, ModuleJson, ValidationFailure, ValidationReport};
pub use tensor::{tensor_over_f, tensor_over_r, TensorOverF};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Linear(#[from] gf2core::Gf2Error),
    #[error(transparent)]
    Ring(#[from] ring_r::RingError),
    #[error("modules have different precisions ({0} and {1})")]
    PrecisionMismatch(u32, u32),
    #[error("window overflow while shifting by {0}")]
    WindowOverflow(i64),
    #[error("action map {0} has the wrong shape or degree")]
    BadAction(&'static str),
    #[error("unknown catalogue module {0:?}")]
    UnknownModule(String),
    #[error("invalid module description: {0}")]
    Invalid(String),
}
