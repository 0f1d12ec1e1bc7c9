use std::collections::{BTreeMap, HashMap};

use gf2core::BitMatrix;
use ring_r::{Monomial, Precision};
use rmodule::GradedModule;

use crate::{Coefficients, ModView, ResolveError};

/// The basis element x[γ₁|…|γₙ]y; `x` and `y` are (degree, index) pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BarWord {
    pub x: (i64, usize),
    pub slots: Vec<Monomial>,
    pub y: (i64, usize),
}

impl BarWord {
    pub fn internal_degree(&self) -> i64 {
        self.x.0 + self.y.0 + self.slots.iter().map(|m| m.degree()).sum::<i64>()
    }
}

/// δ(x[γ₁|…|γₙ]y) = (xγ₁)[γ₂|…]y + Σ x[…|γₖγₖ₊₁|…]y + x[…|γₙ₋₁](γₙy), reduced mod 2.
pub fn bar_differential(m: &ModView, n: &ModView, p: Precision, word: &BarWord) -> Vec<BarWord> {
    let len = word.slots.len();
    let mut terms: BTreeMap<BarWord, bool> = BTreeMap::new();
    let mut add = |w: BarWord| {
        let e = terms.entry(w).or_insert(false);
        *e = !*e;
    };
    if len == 0 {
        return Vec::new();
    }
    let (a, i) = word.x;
    let g1 = word.slots[0];
    for i2 in m.act_basis(a, g1, i).ones() {
        add(BarWord { x: (a + g1.degree(), i2), slots: word.slots[1..].to_vec(), y: word.y });
    }
    for k in 0..len - 1 {
        if let Some(prod) = word.slots[k].mul(word.slots[k + 1], p) {
            let mut slots = word.slots[..k].to_vec();
            slots.push(prod);
            slots.extend_from_slice(&word.slots[k + 2..]);
            add(BarWord { x: word.x, slots, y: word.y });
        }
    }
    let (b, j) = word.y;
    let gn = word.slots[len - 1];
    for j2 in n.act_basis(b, gn, j).ones() {
        add(BarWord { x: word.x, slots: word.slots[..len - 1].to_vec(), y: (b + gn.degree(), j2) });
    }
    terms.into_iter().filter(|(_, odd)| *odd).map(|(w, _)| w).collect()
}

/// All stages of B(M, R, N) in one internal degree.
#[derive(Clone, Debug)]
pub struct BarSlice {
    pub j: i64,
    pub stages: Vec<Vec<BarWord>>,
    /// `diffs[n - 1]` is δ from stage n to stage n − 1.
    pub diffs: Vec<BitMatrix>,
}

impl BarSlice {
    pub fn homology(&self, n: usize) -> usize {
        let dim = self.stages.get(n).map_or(0, Vec::len);
        let out = if n == 0 { 0 } else { self.diffs[n - 1].rank() };
        let inc = self.diffs.get(n).map_or(0, BitMatrix::rank);
        dim - out - inc
    }
}

#[derive(Clone, Debug)]
pub struct BarComplex {
    pub n_max: usize,
    pub slices: BTreeMap<i64, BarSlice>,
}

struct SlotSequences {
    degrees: Vec<(i64, Monomial)>,
    memo: HashMap<(usize, i64), Vec<Vec<Monomial>>>,
}

impl SlotSequences {
    fn new(coeffs: Coefficients, p: Precision) -> Self {
        Self { degrees: coeffs.nonunits(p).map(|m| (m.degree(), m)).collect(), memo: HashMap::new() }
    }

    /// Sequences of `n` non-unit monomials with total degree `s`.
    fn get(&mut self, n: usize, s: i64) -> Vec<Vec<Monomial>> {
        if n == 0 {
            return if s == 0 { vec![Vec::new()] } else { Vec::new() };
        }
        if s > -(n as i64) {
            return Vec::new();
        }
        if let Some(v) = self.memo.get(&(n, s)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for (d, m) in self.degrees.clone() {
            for mut rest in self.get(n - 1, s - d) {
                rest.insert(0, m);
                out.push(rest);
            }
        }
        self.memo.insert((n, s), out.clone());
        out
    }
}

/// B(M, R, N) for internal degrees `j_lo..=j_hi` and stages `0..=n_max`, with δ² = 0 verified.
pub fn bar_complex(m: &GradedModule, n: &GradedModule, coeffs: Coefficients, n_max: usize, j_lo: i64, j_hi: i64) -> Result<BarComplex, ResolveError> {
    if m.precision() != n.precision() {
        return Err(ResolveError::PrecisionMismatch(m.precision().get(), n.precision().get()));
    }
    let p = m.precision();
    let (mv, nv) = (ModView::new(m), ModView::new(n));
    let mut seqs = SlotSequences::new(coeffs, p);
    let mut slices = BTreeMap::new();
    for j in j_lo..=j_hi {
        let mut stages = Vec::with_capacity(n_max + 1);
        for len in 0..=n_max {
            let mut words = Vec::new();
            for a in m.degrees() {
                for b in n.degrees() {
                    for slots in seqs.get(len, j - a - b) {
                        for i in 0..m.dim(a) {
                            for k in 0..n.dim(b) {
                                words.push(BarWord { x: (a, i), slots: slots.clone(), y: (b, k) });
                            }
                        }
                    }
                }
            }
            stages.push(words);
        }
        let mut diffs = Vec::with_capacity(n_max);
        for len in 1..=n_max {
            let index: HashMap<&BarWord, usize> = stages[len - 1].iter().enumerate().map(|(k, w)| (w, k)).collect();
            let mut d = BitMatrix::zeros(stages[len - 1].len(), stages[len].len());
            for (c, w) in stages[len].iter().enumerate() {
                for t in bar_differential(&mv, &nv, p, w) {
                    d.flip(index[&t], c);
                }
            }
            diffs.push(d);
        }
        for len in 2..=n_max {
            if !diffs[len - 2].mul(&diffs[len - 1])?.is_zero() {
                return Err(ResolveError::NotAComplex { stage: len, degree: j });
            }
        }
        slices.insert(j, BarSlice { j, stages, diffs });
    }
    Ok(BarComplex { n_max, slices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> GradedModule {
        rmodule::catalogue("F", Precision::new(4).unwrap(), -20).unwrap().module
    }

    fn word(slots: &[Monomial]) -> BarWord {
        BarWord { x: (0, 0), slots: slots.to_vec(), y: (0, 0) }
    }

    #[test]
    fn cycles_over_the_field() {
        let f = field();
        let v = ModView::new(&f);
        let p = f.precision();
        assert!(bar_differential(&v, &v, p, &word(&[Monomial::Q, Monomial::Q2])).is_empty());
        assert!(bar_differential(&v, &v, p, &word(&[Monomial::Q])).is_empty());
        let vq = Monomial::V;
        let a = bar_differential(&v, &v, p, &word(&[vq, Monomial::Q]));
        let b = bar_differential(&v, &v, p, &word(&[Monomial::Q, vq]));
        assert_eq!(a, b);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn adjacent_product_appears() {
        let f = field();
        let v = ModView::new(&f);
        let d = bar_differential(&v, &v, f.precision(), &word(&[Monomial::Q, Monomial::Q]));
        assert_eq!(d, vec![word(&[Monomial::Q2])]);
    }

    #[test]
    fn stage_zero_is_the_tensor_product() {
        let f = field();
        let bar = bar_complex(&f, &f, Coefficients::Full, 2, -3, 0).unwrap();
        assert_eq!(bar.slices[&0].stages[0].len(), 1);
        assert_eq!(bar.slices[&-1].stages[0].len(), 0);
        assert_eq!(bar.slices[&-3].stages[2].len(), 2);
    }
}
