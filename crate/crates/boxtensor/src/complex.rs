use std::collections::BTreeMap;

use gf2core::{BitMatrix, BitVec};
use serde::Serialize;

/// A finite chain complex over F₂ on an explicit basis; d lowers degree by one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseComplex {
    pub degrees: Vec<i64>,
    /// `d[k]`: sorted ids of the boundary of basis element k.
    pub d: Vec<Vec<usize>>,
}

impl SparseComplex {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn by_degree(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (k, &t) in self.degrees.iter().enumerate() {
            m.entry(t).or_default().push(k);
        }
        m
    }

    /// First basis element whose boundary has a nonzero boundary.
    pub fn square_defect(&self) -> Option<usize> {
        (0..self.len()).find(|&k| {
            let mut acc: BTreeMap<usize, bool> = BTreeMap::new();
            for &a in &self.d[k] {
                for &b in &self.d[a] {
                    *acc.entry(b).or_default() ^= true;
                }
            }
            acc.values().any(|&v| v)
        })
    }

    /// d: C_t → C_{t−1} with rows and columns in the order of `by_degree`.
    pub fn matrix(&self, groups: &BTreeMap<i64, Vec<usize>>, t: i64) -> BitMatrix {
        let empty = Vec::new();
        let src = groups.get(&t).unwrap_or(&empty);
        let dst = groups.get(&(t - 1)).unwrap_or(&empty);
        let pos: BTreeMap<usize, usize> = dst.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let cols: Vec<BitVec> = src.iter().map(|&k| BitVec::from_indices(dst.len(), self.d[k].iter().map(|b| pos[b]))).collect();
        BitMatrix::from_columns(dst.len(), &cols).expect("columns have the target dimension")
    }

    pub fn homology(&self) -> BTreeMap<i64, usize> {
        let groups = self.by_degree();
        let mut out = BTreeMap::new();
        for (&t, ids) in &groups {
            let out_rank = self.matrix(&groups, t).rank();
            let in_rank = if groups.contains_key(&(t + 1)) { self.matrix(&groups, t + 1).rank() } else { 0 };
            let h = ids.len() - out_rank - in_rank;
            if h > 0 {
                out.insert(t, h);
            }
        }
        out
    }

    /// Whether the chain `c` (sorted ids, all in degree t) is a boundary.
    pub fn is_boundary(&self, c: &[usize]) -> bool {
        let Some(&first) = c.first() else { return true };
        let t = self.degrees[first];
        let groups = self.by_degree();
        let empty = Vec::new();
        let ids = groups.get(&t).unwrap_or(&empty);
        let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut span = gf2core::Echelon::new(ids.len());
        for &k in groups.get(&(t + 1)).unwrap_or(&empty) {
            span.insert(&BitVec::from_indices(ids.len(), self.d[k].iter().map(|b| pos[b])));
        }
        let Some(local) = c.iter().map(|b| pos.get(b).copied()).collect::<Option<Vec<_>>>() else { return false };
        span.contains(&BitVec::from_indices(ids.len(), local))
    }

    pub fn is_acyclic(&self) -> bool {
        self.homology().is_empty()
    }
}
