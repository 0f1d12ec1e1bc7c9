use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{AInfAlgebra, AInfError, Chain, GradedBasis, OpTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    Bimodule,
}

/// An A∞-module stored as bimodule operations m_{i,j} on words
/// (a₁,…,a_{i−1}, x, b₁,…,b_{j−1}), of degree i + j − 3.
///
/// Right modules use only i = 1 (m_n = m_{1,n}); left modules only j = 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfModule {
    pub name: String,
    side: Side,
    basis: GradedBasis,
    algebra: Arc<AInfAlgebra>,
    ops: BTreeMap<(usize, usize), OpTable>,
}

impl AInfModule {
    pub fn new(name: impl Into<String>, side: Side, basis: GradedBasis, algebra: Arc<AInfAlgebra>) -> Self {
        Self { name: name.into(), side, basis, algebra, ops: BTreeMap::new() }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn algebra(&self) -> &Arc<AInfAlgebra> {
        &self.algebra
    }

    pub fn tables(&self) -> &BTreeMap<(usize, usize), OpTable> {
        &self.ops
    }

    pub fn table(&self, i: usize, j: usize) -> Option<&OpTable> {
        self.ops.get(&(i, j))
    }

    fn degree_of_word(&self, left: &[usize], x: usize, right: &[usize]) -> i64 {
        let a = self.algebra.basis();
        left.iter().chain(right).map(|&i| a.degree(i)).sum::<i64>() + self.basis.degree(x)
    }

    /// Sets m_{i,j}(left, x, right).
    pub fn set(&mut self, left: &[usize], x: usize, right: &[usize], output: Chain) -> Result<(), AInfError> {
        let (i, j) = (left.len() + 1, right.len() + 1);
        match self.side {
            Side::Right if i > 1 => return Err(AInfError::Kind("right modules take no left inputs".into())),
            Side::Left if j > 1 => return Err(AInfError::Kind("left modules take no right inputs".into())),
            _ => {}
        }
        let na = self.algebra.basis().len();
        if x >= self.basis.len() || left.iter().chain(right).any(|&a| a >= na) {
            return Err(AInfError::Json("basis id out of range".into()));
        }
        let expected = self.degree_of_word(left, x, right) + (i + j) as i64 - 3;
        let key: Vec<usize> = left.iter().copied().chain([x]).chain(right.iter().copied()).collect();
        if output.iter().any(|o| o >= self.basis.len() || self.basis.degree(o) != expected) {
            return Err(AInfError::Degree { op: format!("m{i},{j}"), inputs: key, expected });
        }
        if output.is_zero() {
            if let Some(t) = self.ops.get_mut(&(i, j)) {
                t.remove(&key);
                if t.is_empty() {
                    self.ops.remove(&(i, j));
                }
            }
        } else {
            self.ops.entry((i, j)).or_default().insert(key, output);
        }
        Ok(())
    }

    /// Right-module notation: m_n(x, a₁,…,a_{n−1}) = m_{1,n}.
    pub fn set_right(&mut self, x: usize, right: &[usize], output: Chain) -> Result<(), AInfError> {
        self.set(&[], x, right, output)
    }

    /// Left-module notation: m_n(a₁,…,a_{n−1}, y) = m_{n,1}.
    pub fn set_left(&mut self, left: &[usize], y: usize, output: Chain) -> Result<(), AInfError> {
        self.set(left, y, &[], output)
    }

    pub fn op(&self, left: &[usize], x: usize, right: &[usize]) -> Chain {
        let key: Vec<usize> = left.iter().copied().chain([x]).chain(right.iter().copied()).collect();
        self.ops.get(&(left.len() + 1, right.len() + 1)).and_then(|t| t.get(&key)).cloned().unwrap_or_default()
    }

    /// m_{i,j} extended multilinearly.
    pub fn op_chains(&self, left: &[&Chain], x: &Chain, right: &[&Chain]) -> Chain {
        let mut all: Vec<&Chain> = left.to_vec();
        all.push(x);
        all.extend_from_slice(right);
        let l = left.len();
        let mut out = Chain::zero();
        crate::for_each_tuple(&all, |t| out.add_assign(&self.op(&t[..l], t[l], &t[l + 1..])));
        out
    }

    pub fn differential(&self, c: &Chain) -> Chain {
        self.op_chains(&[], c, &[])
    }

    /// Strict unit action: m_{1,2}(x, 1) = x and/or m_{2,1}(1, x) = x.
    pub fn set_unit_action(&mut self) -> Result<(), AInfError> {
        let unit = self.algebra.unit().ok_or_else(|| AInfError::Kind("algebra has no unit".into()))?;
        for x in 0..self.basis.len() {
            if self.side != Side::Left {
                self.set(&[], x, &[unit], Chain::basis(x))?;
            }
            if self.side != Side::Right {
                self.set(&[unit], x, &[], Chain::basis(x))?;
            }
        }
        Ok(())
    }

    /// The algebra as a right (or left) module over itself, m_k = μ_k.
    pub fn regular(algebra: Arc<AInfAlgebra>, side: Side) -> Self {
        let mut m = Self::new(format!("{} (regular)", algebra.name), side, algebra.basis().clone(), algebra.clone());
        for (k, t) in algebra.tables() {
            let key = match side {
                Side::Left => (*k, 1),
                _ => (1, *k),
            };
            m.ops.insert(key, t.clone());
        }
        m
    }

    /// A right module over A becomes a left module over A^op and vice versa:
    /// every input word is reversed.
    pub fn opposite(&self) -> AInfModule {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Bimodule => Side::Bimodule,
        };
        let ops = self.ops.iter().map(|(&(i, j), t)| ((j, i), t.iter().map(|(k, v)| (k.iter().rev().copied().collect(), v.clone())).collect())).collect();
        AInfModule { name: crate::toggle_op(&self.name), side, basis: self.basis.clone(), algebra: Arc::new(self.algebra.opposite()), ops }
    }

    /// Forgets the left operations of a bimodule.
    pub fn right_part(&self) -> AInfModule {
        let ops = self.ops.iter().filter(|((i, _), _)| *i == 1).map(|(k, t)| (*k, t.clone())).collect();
        AInfModule { name: self.name.clone(), side: Side::Right, basis: self.basis.clone(), algebra: self.algebra.clone(), ops }
    }

    /// Forgets the right operations of a bimodule.
    pub fn left_part(&self) -> AInfModule {
        let ops = self.ops.iter().filter(|((_, j), _)| *j == 1).map(|(k, t)| (*k, t.clone())).collect();
        AInfModule { name: self.name.clone(), side: Side::Left, basis: self.basis.clone(), algebra: self.algebra.clone(), ops }
    }

    pub fn with_side(mut self, side: Side) -> Result<Self, AInfError> {
        let ok = self.ops.keys().all(|&(i, j)| match side {
            Side::Right => i == 1,
            Side::Left => j == 1,
            Side::Bimodule => true,
        });
        if !ok {
            return Err(AInfError::Kind(format!("operations do not fit a {side:?} module")));
        }
        self.side = side;
        Ok(self)
    }
}
