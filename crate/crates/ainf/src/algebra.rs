use std::collections::BTreeMap;

use crate::{AInfError, Chain, GradedBasis};

/// Nonzero values of one operation, keyed by input tuples of basis ids.
pub type OpTable = BTreeMap<Vec<usize>, Chain>;

/// An A∞-algebra over F₂ with |μ_k| = k − 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfAlgebra {
    pub name: String,
    basis: GradedBasis,
    ops: BTreeMap<usize, OpTable>,
    unit: Option<usize>,
}

impl AInfAlgebra {
    pub fn new(name: impl Into<String>, basis: GradedBasis) -> Self {
        Self { name: name.into(), basis, ops: BTreeMap::new(), unit: None }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    /// Declares `id` a strict unit and fills in μ₂(1, a) = μ₂(a, 1) = a.
    pub fn set_unit(&mut self, id: usize) -> Result<(), AInfError> {
        if self.basis.degree(id) != 0 {
            return Err(AInfError::Degree { op: "unit".into(), inputs: vec![id], expected: 0 });
        }
        self.unit = Some(id);
        for a in 0..self.basis.len() {
            self.set(&[id, a], Chain::basis(a))?;
            self.set(&[a, id], Chain::basis(a))?;
        }
        Ok(())
    }

    /// Sets μ_k on a basis tuple, replacing any previous value.
    pub fn set(&mut self, inputs: &[usize], output: Chain) -> Result<(), AInfError> {
        let k = inputs.len();
        if k == 0 {
            return Err(AInfError::Arity(0));
        }
        if let Some(&bad) = inputs.iter().find(|&&i| i >= self.basis.len()) {
            return Err(AInfError::Json(format!("basis id {bad} out of range")));
        }
        let expected = inputs.iter().map(|&i| self.basis.degree(i)).sum::<i64>() + k as i64 - 2;
        if output.iter().any(|o| o >= self.basis.len() || self.basis.degree(o) != expected) {
            return Err(AInfError::Degree { op: format!("mu{k}"), inputs: inputs.to_vec(), expected });
        }
        if output.is_zero() {
            if let Some(t) = self.ops.get_mut(&k) {
                t.remove(inputs);
                if t.is_empty() {
                    self.ops.remove(&k);
                }
            }
        } else {
            self.ops.entry(k).or_default().insert(inputs.to_vec(), output);
        }
        Ok(())
    }

    pub fn mu(&self, inputs: &[usize]) -> Chain {
        self.ops.get(&inputs.len()).and_then(|t| t.get(inputs)).cloned().unwrap_or_default()
    }

    /// μ_k extended multilinearly.
    pub fn mu_chains(&self, inputs: &[&Chain]) -> Chain {
        let mut out = Chain::zero();
        crate::for_each_tuple(inputs, |t| out.add_assign(&self.mu(t)));
        out
    }

    pub fn table(&self, k: usize) -> Option<&OpTable> {
        self.ops.get(&k)
    }

    pub fn tables(&self) -> &BTreeMap<usize, OpTable> {
        &self.ops
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().filter(|(_, t)| !t.is_empty()).map(|(k, _)| *k).max().unwrap_or(0)
    }

    /// All μ_k with k ≥ 3 vanish.
    pub fn is_strict(&self) -> bool {
        self.ops.iter().all(|(k, t)| *k <= 2 || t.is_empty())
    }

    pub fn differential(&self, c: &Chain) -> Chain {
        self.mu_chains(&[c])
    }

    /// The algebra with μ^op_k(a₁,…,a_k) = μ_k(a_k,…,a₁).
    pub fn opposite(&self) -> AInfAlgebra {
        let ops = self.ops.iter().map(|(k, t)| (*k, t.iter().map(|(key, v)| (key.iter().rev().copied().collect(), v.clone())).collect())).collect();
        AInfAlgebra { name: crate::toggle_op(&self.name), basis: self.basis.clone(), ops, unit: self.unit }
    }

    /// Basis ids other than the unit.
    pub fn augmentation_ideal(&self) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| Some(i) != self.unit).collect()
    }
}
