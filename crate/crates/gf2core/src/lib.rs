//! Exact linear algebra over F₂.
//!
//! Vectors and matrix rows are packed into `u64` words and eliminated with
//! word-level XOR. Pivot selection is deterministic (leftmost nonzero unless a
//! column priority is supplied), so every basis produced here is reproducible.

mod bitvec;
mod echelon;
mod graded;
mod matrix;

pub use bitvec::BitVec;
pub use echelon::Echelon;
pub use graded::{homology_dims, GradedMap, GradedVectorSpace};
pub use matrix::BitMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry {0} is not a bit (expected 0 or 1)")]
    NotABit(u64),
    #[error("degree {degree} lies outside the window [{lo}, {hi}]")]
    OutOfWindow { degree: i64, lo: i64, hi: i64 },
    #[error("composite of differentials is nonzero in degree {degree}")]
    NonzeroComposite { degree: i64 },
    #[error("maps are not composable: {0}")]
    NotComposable(String),
}
