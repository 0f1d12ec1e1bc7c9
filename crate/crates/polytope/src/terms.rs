use serde::{Deserialize, Serialize};

use crate::{require, Interval, PolytopeError};

/// μ_i(a₁, …, a_{l−1}, μ_j(a_l, …, a_{l+j−1}), …, a_n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    pub i: usize,
    pub j: usize,
    pub l: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    /// i = 1 or j = 1.
    Differential,
    /// Both operations have arity ≥ 2; one per facet of K_n.
    Facet(Interval),
}

impl RelationTerm {
    pub fn kind(self) -> TermKind {
        if self.i == 1 || self.j == 1 {
            TermKind::Differential
        } else {
            TermKind::Facet(Interval::new(self.l - 1, self.l + self.j - 2))
        }
    }
}

/// Every (i, j, l) with i + j = n + 1 and 1 ≤ l ≤ n − j + 1.
pub fn relation_terms(n: usize) -> Result<Vec<RelationTerm>, PolytopeError> {
    require(n, 1)?;
    Ok((1..=n).flat_map(|j| (1..=n - j + 1).map(move |l| RelationTerm { i: n + 1 - j, j, l })).collect())
}
