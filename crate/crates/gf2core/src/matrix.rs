use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{BitVec, Gf2Error};

/// A dense matrix over F₂ stored as packed rows. Acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u8>>", into = "Vec<Vec<u8>>")]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

/// Row-reduced form together with the pivot column of each nonzero row.
struct Reduced {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows: vec![BitVec::zeros(cols); rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: (0..n).map(|i| BitVec::unit(n, i)).collect(), cols: n }
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Ok(Self { rows, cols })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[BitVec]) -> Result<Self, Gf2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Gf2Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            for r in col.ones() {
                m.rows[r].set(c, true);
            }
        }
        Ok(m)
    }

    pub fn from_u8_rows(rows: &[Vec<u8>]) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut packed = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != cols {
                return Err(Gf2Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            if let Some(&b) = row.iter().find(|&&b| b > 1) {
                return Err(Gf2Error::NotABit(u64::from(b)));
            }
            packed.push(BitVec::from_bools(&row.iter().map(|&b| b == 1).collect::<Vec<_>>()));
        }
        Ok(Self { rows: packed, cols })
    }

    pub fn to_u8_rows(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|r| r.to_bools().into_iter().map(u8::from).collect()).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> Vec<bool> {
        self.rows.iter().flat_map(BitVec::to_bools).collect()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        self.rows[r].set(c, bit);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.rows[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_indices(self.rows.len(), (0..self.rows.len()).filter(|&r| self.rows[r].get(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVec::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &BitVec) -> BitVec {
        assert_eq!(x.len(), self.cols, "matrix-vector length mismatch");
        BitVec::from_indices(self.rows.len(), (0..self.rows.len()).filter(|&r| self.rows[r].dot(x)))
    }

    /// `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.rows() {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: other.rows() });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BitVec::zeros(other.cols);
                for k in row.ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        Ok(BitMatrix { rows, cols: other.cols })
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows() != other.rows() || self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows() * self.cols, found: other.rows() * other.cols });
        }
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
        Ok(out)
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix { rows, cols: self.cols })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix, Gf2Error> {
        if self.rows() != other.rows() {
            return Err(Gf2Error::DimensionMismatch { expected: self.rows(), found: other.rows() });
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.concat(b)).collect();
        Ok(BitMatrix { rows, cols: self.cols + other.cols })
    }

    fn reduce(&self, order: Option<&[usize]>) -> Reduced {
        let mut rows: Vec<BitVec> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let default: Vec<usize>;
        let order = match order {
            Some(o) => o,
            None => {
                default = (0..self.cols).collect();
                &default
            }
        };
        let mut pivots = Vec::new();
        let mut next = 0;
        for &c in order {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| rows[r].get(c)) else { continue };
            rows.swap(next, found);
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            next += 1;
        }
        rows.truncate(next);
        Reduced { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.reduce(None).pivots.len()
    }

    /// Null-space basis as the columns of a `cols × nullity` matrix.
    pub fn kernel_basis(&self) -> BitMatrix {
        self.kernel_basis_with_order(None)
    }

    /// As [`BitMatrix::kernel_basis`], choosing pivots in the given column order.
    pub fn kernel_basis_with_order(&self, order: Option<&[usize]>) -> BitMatrix {
        BitMatrix::from_columns(self.cols, &self.kernel_vectors(order)).expect("kernel vectors have length cols")
    }

    pub fn kernel_vectors(&self, order: Option<&[usize]>) -> Vec<BitVec> {
        let red = self.reduce(order);
        let mut is_pivot = vec![false; self.cols];
        for &p in &red.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::unit(self.cols, free);
                for (row, &p) in red.rows.iter().zip(&red.pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        self.solve_with_order(b, None)
    }

    /// As [`BitMatrix::solve`] with pivots chosen in the given column order.
    /// Free variables are set to zero, so the order selects the particular solution.
    pub fn solve_with_order(&self, b: &BitVec, order: Option<&[usize]>) -> Option<BitVec> {
        assert_eq!(b.len(), self.rows(), "right-hand side length must equal row count");
        let augmented = self.hstack(&BitMatrix::from_columns(self.rows(), std::slice::from_ref(b)).ok()?).ok()?;
        let mut full_order: Vec<usize> = match order {
            Some(o) => o.to_vec(),
            None => (0..self.cols).collect(),
        };
        full_order.push(self.cols);
        let red = augmented.reduce(Some(&full_order));
        if red.pivots.contains(&self.cols) {
            return None;
        }
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in red.rows.iter().zip(&red.pivots) {
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }
}

impl TryFrom<Vec<Vec<u8>>> for BitMatrix {
    type Error = Gf2Error;

    fn try_from(rows: Vec<Vec<u8>>) -> Result<Self, Self::Error> {
        BitMatrix::from_u8_rows(&rows)
    }
}

impl From<BitMatrix> for Vec<Vec<u8>> {
    fn from(m: BitMatrix) -> Self {
        m.to_u8_rows()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows(), self.cols)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u8]]) -> BitMatrix {
        BitMatrix::from_u8_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::identity(3).rank(), 3);
        assert_eq!(BitMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(m(&[&[1, 1], &[1, 1]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(BitMatrix::identity(4).kernel_basis().cols(), 0);
        assert_eq!(BitMatrix::zeros(2, 2).kernel_basis().cols(), 2);
        let k = m(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), BitVec::from_indices(2, [0, 1]));
    }

    #[test]
    fn solve_examples() {
        let b = BitVec::from_indices(3, [0, 2]);
        assert_eq!(BitMatrix::identity(3).solve(&b), Some(b.clone()));
        assert_eq!(BitMatrix::zeros(3, 3).solve(&b), None);
        let x = m(&[&[1, 1]]).solve(&BitVec::unit(1, 0)).unwrap();
        assert_eq!(x.count_ones(), 1);
        let y = m(&[&[1, 1]]).solve_with_order(&BitVec::unit(1, 0), Some(&[1, 0])).unwrap();
        assert_eq!(y, BitVec::unit(2, 1));
    }

    #[test]
    fn transpose_and_mul() {
        let a = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let at = a.transpose();
        assert_eq!(at.rows(), 3);
        let g = a.mul(&at).unwrap();
        assert_eq!(g, m(&[&[0, 1], &[1, 0]]));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let a = m(&[&[1, 0], &[1, 1]]);
        let json = serde_json_like(&a);
        assert_eq!(json, vec![vec![1, 0], vec![1, 1]]);
        assert_eq!(BitMatrix::try_from(json).unwrap(), a);
    }

    fn serde_json_like(a: &BitMatrix) -> Vec<Vec<u8>> {
        a.clone().into()
    }
}
