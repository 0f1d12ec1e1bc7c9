use std::collections::BTreeSet;
use std::fmt::{self, Write};

use serde::{Deserialize, Serialize};

use crate::{require, PolytopeError};

/// The consecutive block {i, …, j}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub i: usize,
    pub j: usize,
}

/// Whether the block starts at the module end (index 0) or sits among algebra inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Module,
    Algebra,
}

impl Interval {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "an interval has at least two elements");
        Self { i, j }
    }

    pub fn len(self) -> usize {
        self.j - self.i + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, other: Interval) -> bool {
        self.i <= other.i && other.j <= self.j
    }

    pub fn disjoint(self, other: Interval) -> bool {
        self.j < other.i || other.j < self.i
    }

    pub fn slot(self) -> Slot {
        if self.i == 0 {
            Slot::Module
        } else {
            Slot::Algebra
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}..{}}}", self.i, self.j)
    }
}

/// Disjoint or nested.
pub fn compatible(a: Interval, b: Interval) -> bool {
    a.disjoint(b) || a.contains(b) || b.contains(a)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Face {
    pub n: usize,
    pub intervals: BTreeSet<Interval>,
}

impl Face {
    pub fn codimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn dimension(&self) -> usize {
        self.n - 2 - self.intervals.len()
    }

    /// Bracketing of 0…n−1, e.g. "(01)2" for the interval {0..1} in K₃.
    pub fn parenthesization(&self) -> String {
        let mut out = String::new();
        for k in 0..self.n {
            for _ in self.intervals.iter().filter(|iv| iv.i == k) {
                out.push('(');
            }
            let _ = write!(out, "{k}");
            for _ in self.intervals.iter().filter(|iv| iv.j == k) {
                out.push(')');
            }
        }
        out
    }
}

/// A codimension-one face K_l × K_{n−l+1} of K_n, l the interval length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub interval: Interval,
    pub inner: usize,
    pub outer: usize,
}

/// Intervals of length 2 … n−1.
pub fn proper_intervals(n: usize) -> Vec<Interval> {
    (2..n).flat_map(|l| (0..=n - l).map(move |i| Interval::new(i, i + l - 1))).collect()
}

pub fn associahedron_facets(n: usize) -> Result<Vec<Facet>, PolytopeError> {
    require(n, 2)?;
    Ok(proper_intervals(n).into_iter().map(|iv| Facet { interval: iv, inner: iv.len(), outer: n - iv.len() + 1 }).collect())
}

/// Every face of K_n, from the top cell (no intervals) down to the vertices.
pub fn face_lattice(n: usize) -> Result<Vec<Face>, PolytopeError> {
    require(n, 2)?;
    let all = proper_intervals(n);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend(&all, 0, &mut chosen, &mut |set| out.push(Face { n, intervals: set.iter().copied().collect() }));
    out.sort_by(|a, b| (a.codimension(), &a.intervals).cmp(&(b.codimension(), &b.intervals)));
    Ok(out)
}

fn extend(all: &[Interval], from: usize, chosen: &mut Vec<Interval>, emit: &mut dyn FnMut(&[Interval])) {
    emit(chosen);
    for k in from..all.len() {
        if chosen.iter().all(|&c| compatible(c, all[k])) {
            chosen.push(all[k]);
            extend(all, k + 1, chosen, emit);
            chosen.pop();
        }
    }
}

/// Face counts indexed by dimension 0 … n−2.
pub fn f_vector(n: usize) -> Result<Vec<usize>, PolytopeError> {
    let mut f = vec![0; n - 1];
    for face in face_lattice(n)? {
        f[face.dimension()] += 1;
    }
    Ok(f)
}

pub fn f_vector_csv(n: usize) -> Result<String, PolytopeError> {
    let mut out = String::from("dimension,faces\n");
    for (d, c) in f_vector(n)?.into_iter().enumerate() {
        let _ = writeln!(out, "{d},{c}");
    }
    Ok(out)
}

/// Σ (−1)^dim over all faces.
pub fn euler_characteristic(n: usize) -> Result<i64, PolytopeError> {
    Ok(f_vector(n)?.iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum())
}

/// Maximal compatible families: one (n−2)-cube per vertex.
pub fn cube_decomposition(n: usize) -> Result<Vec<Face>, PolytopeError> {
    Ok(face_lattice(n)?.into_iter().filter(|f| f.dimension() == 0).collect())
}

pub fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compatibility_rule() {
        assert!(compatible(Interval::new(0, 1), Interval::new(2, 3)));
        assert!(compatible(Interval::new(0, 1), Interval::new(0, 2)));
        assert!(!compatible(Interval::new(0, 2), Interval::new(1, 3)));
    }

    #[test]
    fn catalan_numbers() {
        assert_eq!((0..8).map(catalan).collect::<Vec<_>>(), [1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn brackets() {
        let face = Face { n: 4, intervals: [Interval::new(0, 1), Interval::new(0, 2)].into_iter().collect() };
        assert_eq!(face.parenthesization(), "((01)2)3");
        assert_eq!(Interval::new(1, 2).slot(), Slot::Algebra);
        assert_eq!(Interval::new(0, 2).slot(), Slot::Module);
    }
}
