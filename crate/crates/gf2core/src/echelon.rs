use crate::BitVec;

/// An incrementally built echelon basis of a subspace of F₂ⁿ.
///
/// Every stored row remembers which inserted generators it is a combination
/// of, so membership tests can also return coordinates.
#[derive(Clone, Debug)]
pub struct Echelon {
    ambient: usize,
    rows: Vec<(usize, BitVec, BitVec)>,
    inserted: usize,
    priority: Option<Vec<usize>>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Self {
        Self { ambient, rows: Vec::new(), inserted: 0, priority: None }
    }

    /// Pivots are the set bit with the smallest `priority[bit]`.
    pub fn with_priority(ambient: usize, priority: Vec<usize>) -> Self {
        assert_eq!(priority.len(), ambient, "priority must rank every coordinate");
        Self { ambient, rows: Vec::new(), inserted: 0, priority: Some(priority) }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Number of `insert` calls so far, i.e. the length of coordinate vectors.
    pub fn generator_count(&self) -> usize {
        self.inserted
    }

    fn pivot_of(&self, v: &BitVec) -> Option<usize> {
        match &self.priority {
            None => v.first_one(),
            Some(p) => v.ones().min_by_key(|&i| p[i]),
        }
    }

    fn reduce_tracked(&self, v: &BitVec) -> (BitVec, BitVec) {
        assert_eq!(v.len(), self.ambient, "vector not in the ambient space");
        let mut r = v.clone();
        let mut tag = BitVec::zeros(self.inserted);
        for (pivot, row, row_tag) in &self.rows {
            if r.get(*pivot) {
                r.xor_assign(row);
                let mut t = row_tag.clone();
                t.resize(self.inserted);
                tag.xor_assign(&t);
            }
        }
        (r, tag)
    }

    /// Residual of `v` after reduction; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        self.reduce_tracked(v).0
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds a generator. Returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        let (r, mut tag) = self.reduce_tracked(v);
        let index = self.inserted;
        self.inserted += 1;
        tag.resize(self.inserted);
        tag.flip(index);
        match self.pivot_of(&r) {
            None => false,
            Some(p) => {
                self.rows.push((p, r, tag));
                true
            }
        }
    }

    /// Coefficients over the inserted generators summing to `v`, if `v` is in the span.
    /// Generators that were dependent on earlier ones never appear.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (r, tag) = self.reduce_tracked(v);
        r.is_zero().then_some(tag)
    }

    pub fn basis(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, r, _)| r)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _, _)| *p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn express_recovers_generators() {
        let mut e = Echelon::new(3);
        let a = BitVec::from_indices(3, [0, 1]);
        let b = BitVec::from_indices(3, [1, 2]);
        assert!(e.insert(&a));
        assert!(e.insert(&b));
        assert!(!e.insert(&BitVec::from_indices(3, [0, 2])));
        let target = BitVec::from_indices(3, [0, 2]);
        let coeffs = e.express(&target).unwrap();
        assert_eq!(coeffs, BitVec::from_indices(3, [0, 1]));
        assert!(e.express(&BitVec::unit(3, 0)).is_none());
    }

    #[test]
    fn priority_changes_pivots_not_span() {
        let mut a = Echelon::new(3);
        let mut b = Echelon::with_priority(3, vec![2, 1, 0]);
        for v in [BitVec::from_indices(3, [0, 1]), BitVec::from_indices(3, [1, 2])] {
            a.insert(&v);
            b.insert(&v);
        }
        assert_eq!(a.dim(), b.dim());
        for v in [BitVec::from_indices(3, [0, 2]), BitVec::unit(3, 1)] {
            assert_eq!(a.contains(&v), b.contains(&v));
        }
        assert_ne!(a.pivots().collect::<Vec<_>>(), b.pivots().collect::<Vec<_>>());
    }
}
