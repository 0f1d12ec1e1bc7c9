use std::collections::{BTreeMap, BTreeSet};

use gf2core::{BitVec, GradedVectorSpace};
use serde::{Deserialize, Serialize};

/// A sum of basis elements over F₂.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain(BTreeSet<usize>);

impl Chain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(id: usize) -> Self {
        Self(BTreeSet::from([id]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.contains(&id)
    }

    pub fn toggle(&mut self, id: usize) {
        if !self.0.remove(&id) {
            self.0.insert(id);
        }
    }

    pub fn add_assign(&mut self, other: &Chain) {
        for &id in &other.0 {
            self.toggle(id);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl std::ops::Add for &Chain {
    type Output = Chain;

    fn add(self, other: &Chain) -> Chain {
        let mut c = self.clone();
        c.add_assign(other);
        c
    }
}

impl FromIterator<usize> for Chain {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut c = Chain::zero();
        for id in iter {
            c.toggle(id);
        }
        c
    }
}

impl std::fmt::Debug for Chain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

/// Basis elements with degrees and labels; ids are positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<BasisEntry>", into = "Vec<BasisEntry>")]
pub struct GradedBasis {
    degrees: Vec<i64>,
    labels: Vec<String>,
    by_degree: BTreeMap<i64, Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    label: String,
    degree: i64,
}

impl From<Vec<BasisEntry>> for GradedBasis {
    fn from(v: Vec<BasisEntry>) -> Self {
        let mut b = GradedBasis::new();
        for e in v {
            b.push(e.degree, e.label);
        }
        b
    }
}

impl From<GradedBasis> for Vec<BasisEntry> {
    fn from(b: GradedBasis) -> Self {
        b.labels.into_iter().zip(b.degrees).map(|(label, degree)| BasisEntry { label, degree }).collect()
    }
}

impl GradedBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(degrees: Vec<i64>, labels: Vec<String>) -> Self {
        let mut b = Self::new();
        for (d, l) in degrees.into_iter().zip(labels) {
            b.push(d, l);
        }
        b
    }

    pub fn push(&mut self, degree: i64, label: impl Into<String>) -> usize {
        let id = self.degrees.len();
        self.degrees.push(degree);
        self.labels.push(label.into());
        self.by_degree.entry(degree).or_default().push(id);
        id
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, id: usize) -> i64 {
        self.degrees[id]
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Ids of degree `d`, in increasing order.
    pub fn in_degree(&self, d: i64) -> &[usize] {
        self.by_degree.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn occupied_degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.by_degree.keys().copied()
    }

    /// Degree of a nonzero homogeneous chain.
    pub fn chain_degree(&self, c: &Chain) -> Option<i64> {
        let mut it = c.iter().map(|id| self.degrees[id]);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn to_vec(&self, d: i64, c: &Chain) -> BitVec {
        let ids = self.in_degree(d);
        BitVec::from_indices(ids.len(), c.iter().map(|id| ids.binary_search(&id).expect("chain has the stated degree")))
    }

    pub fn to_chain(&self, d: i64, v: &BitVec) -> Chain {
        let ids = self.in_degree(d);
        v.ones().map(|k| ids[k]).collect()
    }

    pub fn render(&self, c: &Chain) -> String {
        if c.is_zero() {
            return "0".to_string();
        }
        c.iter().map(|id| self.labels[id].as_str()).collect::<Vec<_>>().join(" + ")
    }

    pub fn space(&self) -> GradedVectorSpace {
        let lo = self.by_degree.keys().next().copied().unwrap_or(0);
        let hi = self.by_degree.keys().next_back().copied().unwrap_or(0);
        let mut s = GradedVectorSpace::with_dims(lo, hi, self.by_degree.iter().map(|(d, v)| (*d, v.len()))).expect("degrees lie in their own window");
        for (d, ids) in &self.by_degree {
            s.set_labels(*d, ids.iter().map(|&i| self.labels[i].clone()).collect()).expect("label count matches");
        }
        s
    }
}
