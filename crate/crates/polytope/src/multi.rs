use serde::{Deserialize, Serialize};

use crate::{require, PolytopeError};

/// Facets of J_n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplihedronFacet {
    /// J_{i₁} × ⋯ × J_{i_j} × K_j with i₁ + ⋯ + i_j = n, j ≥ 2.
    Composition(Vec<usize>),
    /// J_{n−e+1} × K_e: e consecutive inputs starting at `position` multiplied first.
    Block { position: usize, size: usize },
}

impl MultiplihedronFacet {
    pub fn dimension_check(&self, n: usize) -> bool {
        match self {
            MultiplihedronFacet::Composition(parts) => parts.iter().map(|i| i - 1).sum::<usize>() + parts.len() - 2 == n - 2,
            MultiplihedronFacet::Block { size, .. } => (n - size) + (size - 2) == n - 2,
        }
    }
}

pub fn multiplihedron_facets(n: usize) -> Result<Vec<MultiplihedronFacet>, PolytopeError> {
    require(n, 1)?;
    let mut out = Vec::new();
    for mask in 1u64..(1 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for k in 0..n - 1 {
            if mask >> k & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.push(MultiplihedronFacet::Composition(parts));
    }
    for size in 2..=n {
        for position in 0..=n - size {
            out.push(MultiplihedronFacet::Block { position, size });
        }
    }
    Ok(out)
}
