use gf2core::{BitMatrix, BitVec, Echelon};

use crate::{AInfAlgebra, AInfModule, Chain, GradedBasis, OpTable};

/// The complex (C, d) underlying an algebra (μ₁) or a module (m₁).
pub struct Complex<'a> {
    basis: &'a GradedBasis,
    d: Option<&'a OpTable>,
}

impl<'a> Complex<'a> {
    pub fn new(basis: &'a GradedBasis, d: Option<&'a OpTable>) -> Self {
        Self { basis, d }
    }

    pub fn of_algebra(a: &'a AInfAlgebra) -> Self {
        Self::new(a.basis(), a.table(1))
    }

    pub fn of_module(m: &'a AInfModule) -> Self {
        Self::new(m.basis(), m.table(1, 1))
    }

    pub fn basis(&self) -> &GradedBasis {
        self.basis
    }

    pub fn d(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero();
        if let Some(t) = self.d {
            for x in c.iter() {
                if let Some(v) = t.get(&vec![x]) {
                    out.add_assign(v);
                }
            }
        }
        out
    }

    /// d: C_deg → C_{deg−1}.
    pub fn matrix(&self, deg: i64) -> BitMatrix {
        let cols: Vec<BitVec> = self.basis.in_degree(deg).iter().map(|&x| self.basis.to_vec(deg - 1, &self.d(&Chain::basis(x)))).collect();
        BitMatrix::from_columns(self.basis.in_degree(deg - 1).len(), &cols).expect("columns have the target dimension")
    }

    pub fn is_cycle(&self, c: &Chain) -> bool {
        self.d(c).is_zero()
    }

    /// Some s of degree `deg + 1` with ds = target.
    pub fn solve(&self, deg: i64, target: &Chain, order: Option<&[usize]>) -> Option<Chain> {
        let m = self.matrix(deg + 1);
        let s = m.solve_with_order(&self.basis.to_vec(deg, target), order)?;
        Some(self.basis.to_chain(deg + 1, &s))
    }

    pub fn cycles(&self, deg: i64) -> Vec<Chain> {
        self.matrix(deg).kernel_vectors(None).iter().map(|v| self.basis.to_chain(deg, v)).collect()
    }

    pub fn boundaries(&self, deg: i64) -> Vec<Chain> {
        self.basis.in_degree(deg + 1).iter().map(|&x| self.d(&Chain::basis(x))).filter(|c| !c.is_zero()).collect()
    }

    /// Cycle representatives of a basis of H_deg.
    pub fn homology_basis(&self, deg: i64) -> Vec<Chain> {
        let mut span = Echelon::new(self.basis.in_degree(deg).len());
        for b in self.boundaries(deg) {
            span.insert(&self.basis.to_vec(deg, &b));
        }
        self.cycles(deg).into_iter().filter(|z| span.insert(&self.basis.to_vec(deg, z))).collect()
    }

    pub fn homology_dim(&self, deg: i64) -> usize {
        self.homology_basis(deg).len()
    }

    /// Canonical representative of `c` modulo boundaries and `extra`.
    pub fn reduce(&self, deg: i64, c: &Chain, extra: &[Chain]) -> Chain {
        let mut span = Echelon::new(self.basis.in_degree(deg).len());
        for b in self.boundaries(deg).iter().chain(extra) {
            span.insert(&self.basis.to_vec(deg, b));
        }
        self.basis.to_chain(deg, &span.reduce(&self.basis.to_vec(deg, c)))
    }

    pub fn is_boundary(&self, deg: i64, c: &Chain) -> bool {
        self.reduce(deg, c, &[]).is_zero()
    }
}

/// Whether the product induced by μ₂ on H(A) is associative on basis classes in `window`.
pub fn homology_product_associative(a: &AInfAlgebra, window: (i64, i64)) -> bool {
    let cx = Complex::of_algebra(a);
    let classes: Vec<(i64, Chain)> = (window.0..=window.1).flat_map(|d| cx.homology_basis(d).into_iter().map(move |z| (d, z))).collect();
    for (d1, x) in &classes {
        for (d2, y) in &classes {
            let xy = a.mu_chains(&[x, y]);
            for (d3, z) in &classes {
                let left = a.mu_chains(&[&xy, z]);
                let right = a.mu_chains(&[x, &a.mu_chains(&[y, z])]);
                if !cx.is_boundary(d1 + d2 + d3, &(&left + &right)) {
                    return false;
                }
            }
        }
    }
    true
}
