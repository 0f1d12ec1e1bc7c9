use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{BitMatrix, Gf2Error};

/// A finite graded F₂-vector space supported in a degree window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    lo: i64,
    hi: i64,
    dims: BTreeMap<i64, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    labels: BTreeMap<i64, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi, dims: BTreeMap::new(), labels: BTreeMap::new() }
    }

    pub fn with_dims(lo: i64, hi: i64, dims: impl IntoIterator<Item = (i64, usize)>) -> Result<Self, Gf2Error> {
        let mut space = Self::new(lo, hi);
        for (d, n) in dims {
            space.set_dim(d, n)?;
        }
        Ok(space)
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn set_dim(&mut self, degree: i64, n: usize) -> Result<(), Gf2Error> {
        if n == 0 {
            self.dims.remove(&degree);
            self.labels.remove(&degree);
            return Ok(());
        }
        if degree < self.lo || degree > self.hi {
            return Err(Gf2Error::OutOfWindow { degree, lo: self.lo, hi: self.hi });
        }
        self.dims.insert(degree, n);
        Ok(())
    }

    pub fn set_labels(&mut self, degree: i64, labels: Vec<String>) -> Result<(), Gf2Error> {
        if labels.len() != self.dim(degree) {
            return Err(Gf2Error::DimensionMismatch { expected: self.dim(degree), found: labels.len() });
        }
        self.labels.insert(degree, labels);
        Ok(())
    }

    pub fn labels(&self, degree: i64) -> Option<&[String]> {
        self.labels.get(&degree).map(Vec::as_slice)
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Degrees with nonzero dimension, ascending.
    pub fn degrees(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn top(&self) -> Option<i64> {
        self.dims.keys().next_back().copied()
    }

    pub fn bottom(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }
}

/// A degree-`shift` linear map given blockwise; missing blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    source: GradedVectorSpace,
    target: GradedVectorSpace,
    shift: i64,
    blocks: BTreeMap<i64, BitMatrix>,
}

impl GradedMap {
    pub fn zero(source: GradedVectorSpace, target: GradedVectorSpace, shift: i64) -> Self {
        Self { source, target, shift, blocks: BTreeMap::new() }
    }

    /// `blocks[d]` maps degree `d` of the source to degree `d + shift` of the target.
    pub fn new(source: GradedVectorSpace, target: GradedVectorSpace, shift: i64, blocks: BTreeMap<i64, BitMatrix>) -> Result<Self, Gf2Error> {
        let mut map = Self::zero(source, target, shift);
        for (d, b) in blocks {
            map.set_block(d, b)?;
        }
        Ok(map)
    }

    pub fn set_block(&mut self, degree: i64, block: BitMatrix) -> Result<(), Gf2Error> {
        let (rows, cols) = (self.target.dim(degree + self.shift), self.source.dim(degree));
        if block.cols() != cols {
            return Err(Gf2Error::DimensionMismatch { expected: cols, found: block.cols() });
        }
        if block.rows() != rows {
            return Err(Gf2Error::DimensionMismatch { expected: rows, found: block.rows() });
        }
        if rows == 0 || cols == 0 || block.is_zero() {
            self.blocks.remove(&degree);
        } else {
            self.blocks.insert(degree, block);
        }
        Ok(())
    }

    pub fn source(&self) -> &GradedVectorSpace {
        &self.source
    }

    pub fn target(&self) -> &GradedVectorSpace {
        &self.target
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The block out of source degree `d`, materialized as zero when absent.
    pub fn block(&self, degree: i64) -> BitMatrix {
        self.blocks.get(&degree).cloned().unwrap_or_else(|| BitMatrix::zeros(self.target.dim(degree + self.shift), self.source.dim(degree)))
    }

    pub fn stored_blocks(&self) -> &BTreeMap<i64, BitMatrix> {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GradedMap) -> Result<GradedMap, Gf2Error> {
        if self.target != other.source {
            return Err(Gf2Error::NotComposable("target of the first map differs from the source of the second".into()));
        }
        let mut out = GradedMap::zero(self.source.clone(), other.target.clone(), self.shift + other.shift);
        for d in self.source.degrees() {
            let b = other.block(d + self.shift).mul(&self.block(d))?;
            out.set_block(d, b)?;
        }
        Ok(out)
    }
}

/// Homology of `C` for `d_in: C' → C` and `d_out: C → C''`.
///
/// The result in degree `d` is `dim ker(d_out)_d − rank(d_in)` into degree `d`.
pub fn homology_dims(d_in: &GradedMap, d_out: &GradedMap) -> Result<GradedVectorSpace, Gf2Error> {
    let space = d_out.source();
    if d_in.target() != space {
        return Err(Gf2Error::NotComposable("d_in does not land in the source of d_out".into()));
    }
    for d in d_in.source().degrees() {
        let comp = d_out.block(d + d_in.shift()).mul(&d_in.block(d))?;
        if !comp.is_zero() {
            return Err(Gf2Error::NonzeroComposite { degree: d + d_in.shift() });
        }
    }
    let (lo, hi) = space.window();
    let mut out = GradedVectorSpace::new(lo, hi);
    for d in space.degrees() {
        let kernel = space.dim(d) - d_out.block(d).rank();
        let image = d_in.block(d - d_in.shift()).rank();
        out.set_dim(d, kernel - image)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(dims: &[(i64, usize)]) -> GradedVectorSpace {
        GradedVectorSpace::with_dims(-10, 10, dims.iter().copied()).unwrap()
    }

    #[test]
    fn window_enforced() {
        let mut s = GradedVectorSpace::new(0, 2);
        assert!(s.set_dim(3, 1).is_err());
        assert!(s.set_dim(3, 0).is_ok());
        s.set_dim(1, 2).unwrap();
        assert_eq!(s.total_dim(), 2);
    }

    #[test]
    fn homology_of_zero_maps() {
        let c = sp(&[(0, 2)]);
        let d_in = GradedMap::zero(sp(&[]), c.clone(), -1);
        let d_out = GradedMap::zero(c.clone(), sp(&[]), -1);
        assert_eq!(homology_dims(&d_in, &d_out).unwrap().dims(), c.dims());
    }

    #[test]
    fn injective_out_kills_homology() {
        let c = sp(&[(0, 2)]);
        let below = sp(&[(-1, 2)]);
        let d_in = GradedMap::zero(sp(&[]), c.clone(), -1);
        let d_out = GradedMap::new(c, below, -1, [(0, BitMatrix::identity(2))].into()).unwrap();
        assert_eq!(homology_dims(&d_in, &d_out).unwrap().total_dim(), 0);
    }

    #[test]
    fn identity_two_term_complex_is_acyclic() {
        let top = sp(&[(1, 1)]);
        let bottom = sp(&[(0, 1)]);
        let d = GradedMap::new(top.clone(), bottom.clone(), -1, [(1, BitMatrix::identity(1))].into()).unwrap();
        let into_top = GradedMap::zero(sp(&[]), top.clone(), -1);
        let out_bottom = GradedMap::zero(bottom.clone(), sp(&[]), -1);
        assert_eq!(homology_dims(&into_top, &d).unwrap().total_dim(), 0);
        assert_eq!(homology_dims(&d, &out_bottom).unwrap().total_dim(), 0);
    }

    #[test]
    fn nonzero_composite_names_degree() {
        let a = sp(&[(1, 1)]);
        let b = sp(&[(0, 1)]);
        let c = sp(&[(-1, 1)]);
        let f = GradedMap::new(a, b.clone(), -1, [(1, BitMatrix::identity(1))].into()).unwrap();
        let g = GradedMap::new(b, c, -1, [(0, BitMatrix::identity(1))].into()).unwrap();
        assert_eq!(homology_dims(&f, &g), Err(Gf2Error::NonzeroComposite { degree: 0 }));
    }
}
