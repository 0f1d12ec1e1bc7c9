//! Associahedra K_n and multiplihedra J_n as combinatorial objects: faces are
//! sets of pairwise compatible intervals of {0, …, n−1}.

mod assoc;
mod multi;
mod terms;

pub use assoc::{
    associahedron_facets, catalan, compatible, cube_decomposition, euler_characteristic, f_vector, f_vector_csv, face_lattice, proper_intervals, Face, Facet,
    Interval, Slot,
};
pub use multi::{multiplihedron_facets, MultiplihedronFacet};
pub use terms::{relation_terms, RelationTerm, TermKind};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("need n >= {min}, got {n}")]
    TooSmall { n: usize, min: usize },
}

fn require(n: usize, min: usize) -> Result<(), PolytopeError> {
    if n < min {
        Err(PolytopeError::TooSmall { n, min })
    } else {
        Ok(())
    }
}
