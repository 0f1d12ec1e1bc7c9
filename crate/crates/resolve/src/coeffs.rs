use gf2core::BitVec;
use ring_r::{Monomial, Precision};
use rmodule::{ActionTable, GradedModule};
use serde::{Deserialize, Serialize};

/// The coefficient ring: all of R_p, or its subring F[V]/(V^p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum Coefficients {
    #[default]
    Full,
    VOnly,
}

impl Coefficients {
    pub fn monomials(self, p: Precision) -> impl Iterator<Item = Monomial> {
        ring_r::monomials(p).filter(move |m| self == Coefficients::Full || m.q == 0)
    }

    pub fn nonunits(self, p: Precision) -> impl Iterator<Item = Monomial> {
        self.monomials(p).filter(|m| !m.is_unit())
    }

    /// The ring monomial of degree `d`, if there is one.
    pub fn monomial_of_degree(self, d: i64, p: Precision) -> Option<Monomial> {
        Monomial::of_degree(d).filter(|m| m.fits(p) && (self == Coefficients::Full || m.q == 0))
    }
}

/// A module together with its precomputed monomial actions.
pub struct ModView<'a> {
    pub module: &'a GradedModule,
    table: ActionTable,
}

impl<'a> ModView<'a> {
    pub fn new(module: &'a GradedModule) -> Self {
        Self { module, table: ActionTable::new(module) }
    }

    pub fn dim(&self, d: i64) -> usize {
        self.module.dim(d)
    }

    pub fn act(&self, d: i64, m: Monomial, x: &BitVec) -> BitVec {
        if m.is_unit() {
            return x.clone();
        }
        self.table.apply(d, m, x, self.dim(d + m.degree()))
    }

    /// Image of basis vector `i` of degree `d`.
    pub fn act_basis(&self, d: i64, m: Monomial, i: usize) -> BitVec {
        self.act(d, m, &BitVec::unit(self.dim(d), i))
    }
}
