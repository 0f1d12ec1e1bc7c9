//! The A∞-tensor product M ⊠ N, the left module structure it inherits from a
//! bimodule, and mapping cones of module morphisms.

mod boxed;
mod complex;
mod cone;
mod leftmod;

pub use boxed::{box_tensor, BoxParams, BoxTensorComplex, BoxWord, Slots};
pub use complex::SparseComplex;
pub use cone::{iterated_cone, mapping_cone, IteratedCone, MappingCone, TriangleReport};
pub use leftmod::left_module_on_box;

use ainf::{AInfError, CheckReport};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoxError {
    #[error(transparent)]
    AInf(#[from] AInfError),
    #[error("input structure fails its relations: {0}")]
    Relations(Box<CheckReport>),
    #[error("modules are over different algebras")]
    AlgebraMismatch,
    #[error("{0}")]
    Side(&'static str),
    #[error("differential does not square to zero on {0}; the truncation is not a sub- or quotient complex")]
    NotAComplex(String),
    #[error("an operation on the augmentation ideal produced the unit in {0}")]
    NotAugmented(String),
}
