use std::collections::BTreeMap;
use std::sync::Arc;

use ainf::{AInfHomotopy, AInfModule, AInfMorphism, Chain, Complex, GradedBasis};
use gf2core::Echelon;
use serde::Serialize;

use crate::{BoxError, SparseComplex};

/// Cone(f) on target ⊕ source[1], with
/// m((x₁, x₂), …) = (m(x₁, …), f(x₁, …) + m(x₂, …)).
#[derive(Clone, Debug)]
pub struct MappingCone {
    pub module: Arc<AInfModule>,
    /// Cone ids of the target basis.
    pub target_ids: Vec<usize>,
    /// Cone ids of the source basis.
    pub source_ids: Vec<usize>,
    f: AInfMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleDegree {
    pub degree: i64,
    /// dim H of target, cone and source in this degree.
    pub dims: [usize; 3],
    /// Ranks of ι: H(target) → H(cone), π: H(cone) → H(source)[−1] and f: H(source) → H(target).
    pub ranks: [usize; 3],
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleReport {
    pub degrees: Vec<TriangleDegree>,
}

impl TriangleReport {
    pub fn exact(&self) -> bool {
        self.degrees.iter().all(|d| d.exact)
    }
}

pub fn mapping_cone(f: &AInfMorphism) -> Result<MappingCone, BoxError> {
    let (s, t) = (&f.source, &f.target);
    let mut basis = GradedBasis::new();
    let target_ids: Vec<usize> = (0..t.basis().len()).map(|k| basis.push(t.basis().degree(k), t.basis().label(k))).collect();
    let source_ids: Vec<usize> = (0..s.basis().len()).map(|k| basis.push(s.basis().degree(k) + 1, format!("{}[1]", s.basis().label(k)))).collect();
    let mut cone = AInfModule::new(format!("cone({} -> {})", s.name, t.name), s.side(), basis, s.algebra().clone());

    let mut acc: BTreeMap<(Vec<usize>, usize, Vec<usize>), Chain> = BTreeMap::new();
    let map = |ids: &[usize], c: &Chain| -> Chain { c.iter().map(|k| ids[k]).collect() };
    for (&(i, _), table) in t.tables() {
        for (key, out) in table {
            let (l, r) = key.split_at(i - 1);
            acc.entry((l.to_vec(), target_ids[r[0]], r[1..].to_vec())).or_default().add_assign(&map(&target_ids, out));
        }
    }
    for (&(i, _), table) in s.tables() {
        for (key, out) in table {
            let (l, r) = key.split_at(i - 1);
            acc.entry((l.to_vec(), source_ids[r[0]], r[1..].to_vec())).or_default().add_assign(&map(&source_ids, out));
        }
    }
    for (&(i, _), table) in f.components() {
        for (key, out) in table {
            let (l, r) = key.split_at(i - 1);
            acc.entry((l.to_vec(), source_ids[r[0]], r[1..].to_vec())).or_default().add_assign(&map(&target_ids, out));
        }
    }
    for ((l, x, r), out) in acc {
        cone.set(&l, x, &r, out)?;
    }
    Ok(MappingCone { module: Arc::new(cone), target_ids, source_ids, f: f.clone() })
}

/// dim(g(Z_d X) + B Y) − dim B Y, for a chain map g raising degree by `shift`.
fn induced_rank(x: &Complex, y: &Complex, d: i64, shift: i64, g: impl Fn(&Chain) -> Chain) -> usize {
    let e = d + shift;
    let mut span = Echelon::new(y.basis().in_degree(e).len());
    for b in y.boundaries(e) {
        span.insert(&y.basis().to_vec(e, &b));
    }
    let base = span.dim();
    for z in x.cycles(d) {
        span.insert(&y.basis().to_vec(e, &g(&z)));
    }
    span.dim() - base
}

impl MappingCone {
    /// Exactness of H(target) → H(cone) → H(source)[−1] → H(target)[−1] in every degree.
    pub fn triangle(&self) -> TriangleReport {
        let (s, t, c) = (&*self.f.source, &*self.f.target, &*self.module);
        let (cs, ct, cc) = (Complex::of_module(s), Complex::of_module(t), Complex::of_module(c));
        let degrees: Vec<i64> = s.basis().degrees().iter().flat_map(|&d| [d, d + 1]).chain(t.basis().degrees().iter().copied()).collect();
        let (Some(&lo), Some(&hi)) = (degrees.iter().min(), degrees.iter().max()) else {
            return TriangleReport { degrees: Vec::new() };
        };
        let iota = |z: &Chain| z.iter().map(|k| self.target_ids[k]).collect::<Chain>();
        let back: BTreeMap<usize, usize> = self.source_ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
        let pi = |z: &Chain| z.iter().filter_map(|k| back.get(&k).copied()).collect::<Chain>();
        let f = |z: &Chain| self.f.apply_linear(z);
        let rows = (lo..=hi)
            .map(|d| {
                let dims = [ct.homology_dim(d), cc.homology_dim(d), cs.homology_dim(d)];
                let ri = induced_rank(&ct, &cc, d, 0, iota);
                let rp = induced_rank(&cc, &cs, d, -1, pi);
                let rf = induced_rank(&cs, &ct, d, 0, f);
                let rp_next = induced_rank(&cc, &cs, d + 1, -1, pi);
                let exact = dims[1] - rp == ri && dims[0] - ri == rf && dims[2] - rf == rp_next;
                TriangleDegree { degree: d, dims, ranks: [ri, rp, rf], exact }
            })
            .collect();
        TriangleReport { degrees: rows }
    }
}

/// The three-term cone C₃ ⊕ C₂[1] ⊕ C₁[2] of f₁: C₁ → C₂, f₂: C₂ → C₃ with a
/// nullhomotopy h of f₂f₁, on the underlying chain complexes.
#[derive(Clone, Debug)]
pub struct IteratedCone {
    pub basis: GradedBasis,
    pub complex: SparseComplex,
}

impl IteratedCone {
    pub fn homology(&self) -> BTreeMap<i64, usize> {
        self.complex.homology()
    }

    pub fn is_acyclic(&self) -> bool {
        self.complex.is_acyclic()
    }
}

pub fn iterated_cone(f1: &AInfMorphism, f2: &AInfMorphism, h: &AInfHomotopy) -> Result<IteratedCone, BoxError> {
    if f1.target != f2.source || h.source != f1.source || h.target != f2.target {
        return Err(BoxError::Side("maps do not form a composable pair with a homotopy between their ends"));
    }
    let (c1, c2, c3) = (&*f1.source, &*f2.source, &*f2.target);
    let mut basis = GradedBasis::new();
    let mut ids: [Vec<usize>; 3] = Default::default();
    for (slot, (c, shift)) in [(c3, 0), (c2, 1), (c1, 2)].into_iter().enumerate() {
        ids[slot] = (0..c.basis().len()).map(|k| basis.push(c.basis().degree(k) + shift, format!("{}[{shift}]", c.basis().label(k)))).collect();
    }
    let map = |slot: usize, c: Chain| c.iter().map(|k| ids[slot][k]).collect::<Chain>();
    let mut d = vec![Chain::zero(); basis.len()];
    for k in 0..c3.basis().len() {
        d[ids[0][k]] = map(0, c3.differential(&Chain::basis(k)));
    }
    for k in 0..c2.basis().len() {
        let mut out = map(1, c2.differential(&Chain::basis(k)));
        out.add_assign(&map(0, f2.apply(&[], k, &[])));
        d[ids[1][k]] = out;
    }
    for k in 0..c1.basis().len() {
        let mut out = map(2, c1.differential(&Chain::basis(k)));
        out.add_assign(&map(1, f1.apply(&[], k, &[])));
        out.add_assign(&map(0, h.apply(&[], k, &[])));
        d[ids[2][k]] = out;
    }
    let complex = SparseComplex { degrees: basis.degrees().to_vec(), d: d.into_iter().map(|c| c.iter().collect()).collect() };
    if let Some(k) = complex.square_defect() {
        return Err(BoxError::NotAComplex(basis.label(k).to_string()));
    }
    Ok(IteratedCone { basis, complex })
}
