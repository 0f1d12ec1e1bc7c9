use std::collections::{BTreeMap, HashMap};

use gf2core::{BitMatrix, BitVec, Echelon, GradedMap, GradedVectorSpace};
use ring_r::Monomial;

use crate::{GradedModule, ModuleError};

/// Basis x_i ⊗ y_j of M₁ ⊗_F M₂, grouped by total degree.
struct PairBasis {
    by_degree: BTreeMap<i64, Vec<(i64, usize, usize)>>,
    pos: HashMap<(i64, i64, usize, usize), usize>,
}

impl PairBasis {
    fn new(m1: &GradedModule, m2: &GradedModule) -> Self {
        let mut by_degree: BTreeMap<i64, Vec<(i64, usize, usize)>> = BTreeMap::new();
        for a in m1.degrees() {
            for b in m2.degrees() {
                let list = by_degree.entry(a + b).or_default();
                for i in 0..m1.dim(a) {
                    for j in 0..m2.dim(b) {
                        list.push((a, i, j));
                    }
                }
            }
        }
        let pos = by_degree.iter().flat_map(|(d, l)| l.iter().enumerate().map(move |(k, &(a, i, j))| ((*d, a, i, j), k))).collect();
        Self { by_degree, pos }
    }

    fn dim(&self, d: i64) -> usize {
        self.by_degree.get(&d).map_or(0, Vec::len)
    }

    /// `(g ⊗ 1)` or `(1 ⊗ g)` applied to basis element `k` of degree `d`.
    fn act(&self, m1: &GradedModule, m2: &GradedModule, d: i64, k: usize, g: Monomial, left: bool) -> BitVec {
        let (a, i, j) = self.by_degree[&d][k];
        let target = d + g.degree();
        let mut out = BitVec::zeros(self.dim(target));
        if left {
            let img = m1.act(g, a, &BitVec::unit(m1.dim(a), i));
            for i2 in img.ones() {
                out.flip(self.pos[&(target, a + g.degree(), i2, j)]);
            }
        } else {
            let b = d - a;
            let img = m2.act(g, b, &BitVec::unit(m2.dim(b), j));
            for j2 in img.ones() {
                out.flip(self.pos[&(target, a, i, j2)]);
            }
        }
        out
    }
}

/// M₁ ⊗_F M₂ with the action of the first factor, plus the second factor's actions.
#[derive(Clone, Debug)]
pub struct TensorOverF {
    pub module: GradedModule,
    pub right_v: GradedMap,
    pub right_q: GradedMap,
}

fn check_precision(m1: &GradedModule, m2: &GradedModule) -> Result<(), ModuleError> {
    if m1.precision() != m2.precision() {
        return Err(ModuleError::PrecisionMismatch(m1.precision().get(), m2.precision().get()));
    }
    Ok(())
}

fn product_window(m1: &GradedModule, m2: &GradedModule) -> Result<(i64, i64), ModuleError> {
    let ((l1, h1), (l2, h2)) = (m1.window(), m2.window());
    let lo = l1.checked_add(l2).ok_or(ModuleError::WindowOverflow(l2))?;
    let hi = h1.checked_add(h2).ok_or(ModuleError::WindowOverflow(h2))?;
    Ok((lo, hi))
}

pub fn tensor_over_f(m1: &GradedModule, m2: &GradedModule) -> Result<TensorOverF, ModuleError> {
    check_precision(m1, m2)?;
    let basis = PairBasis::new(m1, m2);
    let (lo, hi) = product_window(m1, m2)?;
    let mut space = GradedVectorSpace::new(lo, hi);
    for d in basis.by_degree.keys() {
        space.set_dim(*d, basis.dim(*d))?;
    }
    let action = |g: Monomial, left: bool| -> Result<GradedMap, ModuleError> {
        let mut blocks = BTreeMap::new();
        for &d in basis.by_degree.keys() {
            let cols: Vec<BitVec> = (0..basis.dim(d)).map(|k| basis.act(m1, m2, d, k, g, left)).collect();
            blocks.insert(d, BitMatrix::from_columns(basis.dim(d + g.degree()), &cols)?);
        }
        Ok(GradedMap::new(space.clone(), space.clone(), g.degree(), blocks)?)
    };
    let module = GradedModule::new(action(Monomial::V, true)?, action(Monomial::Q, true)?, m1.precision())?
        .with_offset(m1.offset() + m2.offset())
        .with_reliable_lo(tensor_reliable_lo(m1, m2));
    Ok(TensorOverF { module, right_v: action(Monomial::V, false)?, right_q: action(Monomial::Q, false)? })
}

fn tensor_reliable_lo(m1: &GradedModule, m2: &GradedModule) -> i64 {
    let (t1, t2) = (m1.top().unwrap_or(m1.window().1), m2.top().unwrap_or(m2.window().1));
    (m1.reliable_lo() + t2).max(m2.reliable_lo() + t1)
}

/// The coequalizer of g ⊗ 1 and 1 ⊗ g for g ∈ {V, Q}, with the induced action.
pub fn tensor_over_r(m1: &GradedModule, m2: &GradedModule) -> Result<GradedModule, ModuleError> {
    check_precision(m1, m2)?;
    let basis = PairBasis::new(m1, m2);
    let (lo, hi) = product_window(m1, m2)?;

    struct Quotient {
        echelon: Echelon,
        rep_slots: Vec<usize>,
        reps: Vec<usize>,
    }
    let mut quotients: BTreeMap<i64, Quotient> = BTreeMap::new();
    for &d in basis.by_degree.keys() {
        let n = basis.dim(d);
        let mut echelon = Echelon::new(n);
        for g in [Monomial::V, Monomial::Q] {
            let src = d - g.degree();
            for k in 0..basis.dim(src) {
                let mut rel = basis.act(m1, m2, src, k, g, true);
                rel.xor_assign(&basis.act(m1, m2, src, k, g, false));
                echelon.insert(&rel);
            }
        }
        let mut rep_slots = Vec::new();
        let mut reps = Vec::new();
        for k in 0..n {
            let slot = echelon.generator_count();
            if echelon.insert(&BitVec::unit(n, k)) {
                rep_slots.push(slot);
                reps.push(k);
            }
        }
        quotients.insert(d, Quotient { echelon, rep_slots, reps });
    }
    let coords = |d: i64, v: &BitVec| -> BitVec {
        let q = &quotients[&d];
        let tag = q.echelon.express(v).expect("every vector lies in relations + representatives");
        BitVec::from_indices(q.reps.len(), q.rep_slots.iter().enumerate().filter(|(_, s)| tag.get(**s)).map(|(i, _)| i))
    };

    let mut space = GradedVectorSpace::new(lo, hi);
    for (d, q) in &quotients {
        space.set_dim(*d, q.reps.len())?;
    }
    let action = |g: Monomial| -> Result<GradedMap, ModuleError> {
        let mut blocks = BTreeMap::new();
        for (&d, q) in &quotients {
            let target = d + g.degree();
            let tdim = space.dim(target);
            let cols: Vec<BitVec> =
                q.reps.iter().map(|&k| if tdim == 0 { BitVec::zeros(0) } else { coords(target, &basis.act(m1, m2, d, k, g, true)) }).collect();
            blocks.insert(d, BitMatrix::from_columns(tdim, &cols)?);
        }
        Ok(GradedMap::new(space.clone(), space.clone(), g.degree(), blocks)?)
    };
    Ok(GradedModule::new(action(Monomial::V)?, action(Monomial::Q)?, m1.precision())?
        .with_offset(m1.offset() + m2.offset())
        .with_reliable_lo(tensor_reliable_lo(m1, m2)))
}
