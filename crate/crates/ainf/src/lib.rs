//! A∞-algebras, modules, bimodules and their morphisms over F₂.
//!
//! Operations are sparse tables on basis tuples. All relation checkers share one
//! engine that sums the nonzero composite terms, so a passing check covers every
//! word up to the requested length.

mod algebra;
mod chain;
pub mod homology;
mod json;
mod massey;
pub mod models;
mod module;
mod morphism;
pub mod mutate;
mod relations;

pub use algebra::{AInfAlgebra, OpTable};
pub use chain::{Chain, GradedBasis};
pub use homology::{homology_product_associative, Complex};
pub use json::{AlgebraJson, ModuleJson};
pub use massey::{massey3, massey3_bimodule, massey3_module, massey4, Massey4, MasseyCoset, Pivoting, MASSEY4_ENUMERATION_LIMIT};
pub use module::{AInfModule, Side};
pub use morphism::{check_homotopy, check_morphism, compose, identity, AInfHomotopy, AInfMorphism};
pub use relations::{algebra_relation_at, check_algebra_relations, check_bimodule_relations, check_module_relations, module_relation_at, CheckReport, Failure};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AInfError {
    #[error("operation {op} on {inputs:?} must land in degree {expected}")]
    Degree { op: String, inputs: Vec<usize>, expected: i64 },
    #[error("operations of arity {0} are not allowed")]
    Arity(usize),
    #[error("{0}")]
    Kind(String),
    #[error("{0} is not a cycle")]
    NotACycle(String),
    #[error("product {product} is undefined; obstruction {obstruction}")]
    Undefined { product: String, obstruction: String },
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("malformed structure: {0}")]
    Json(String),
}

/// Calls `f` on every tuple of basis ids drawn from the chains.
pub(crate) fn for_each_tuple(chains: &[&Chain], mut f: impl FnMut(&[usize])) {
    if chains.iter().any(|c| c.is_zero()) {
        return;
    }
    let pools: Vec<Vec<usize>> = chains.iter().map(|c| c.iter().collect()).collect();
    let mut idx = vec![0; pools.len()];
    let mut tuple: Vec<usize> = pools.iter().map(|p| p[0]).collect();
    loop {
        f(&tuple);
        let mut k = pools.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pools[k].len() {
                tuple[k] = pools[k][idx[k]];
                break;
            }
            idx[k] = 0;
            tuple[k] = pools[k][0];
        }
    }
}

pub(crate) fn toggle_op(name: &str) -> String {
    name.strip_suffix("^op").map_or_else(|| format!("{name}^op"), str::to_string)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_cover_the_product() {
        let a: Chain = [1, 2].into_iter().collect();
        let b: Chain = [5, 6, 7].into_iter().collect();
        let mut seen = Vec::new();
        for_each_tuple(&[&a, &b], |t| seen.push(t.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 5]);
        for_each_tuple(&[&a, &Chain::zero()], |_| panic!("zero factor"));
    }

    #[test]
    fn op_suffix_toggles() {
        assert_eq!(toggle_op("A"), "A^op");
        assert_eq!(toggle_op("A^op"), "A");
    }

    #[test]
    fn chains_add_mod_two() {
        let a: Chain = [1, 2].into_iter().collect();
        let b: Chain = [2, 3].into_iter().collect();
        assert_eq!(&a + &b, [1, 3].into_iter().collect());
        assert!((&a + &a).is_zero());
    }
}
