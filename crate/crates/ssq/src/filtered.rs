use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use ainf::Chain;
use boxtensor::{BoxTensorComplex, SparseComplex};
use gf2core::{BitMatrix, BitVec, Echelon};

use crate::{Arrow, Convention, Page, Provenance, SsqError};

/// A finite complex with an increasing filtration given by a level per basis
/// element; F_p is spanned by the elements of level ≤ p.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    pub complex: SparseComplex,
    pub levels: Vec<i64>,
}

type Basis = Rc<Vec<BitVec>>;

/// Subspace computations on a set of basis elements closed under d, with the
/// basis of each C_t ordered by level so that F_p C_t is a prefix.
struct Engine<'a> {
    fc: &'a FilteredComplex,
    by_t: BTreeMap<i64, Vec<usize>>,
    pos: HashMap<usize, usize>,
    z_cache: RefCell<HashMap<(i64, usize, usize), Basis>>,
}

impl<'a> Engine<'a> {
    fn new(fc: &'a FilteredComplex, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut by_t: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for k in ids {
            by_t.entry(fc.complex.degrees[k]).or_default().push(k);
        }
        let mut pos = HashMap::new();
        for ids in by_t.values_mut() {
            ids.sort_by_key(|&k| (fc.levels[k], k));
            pos.extend(ids.iter().enumerate().map(|(i, &k)| (k, i)));
        }
        Self { fc, by_t, pos, z_cache: RefCell::new(HashMap::new()) }
    }

    fn n(&self, t: i64) -> usize {
        self.by_t.get(&t).map_or(0, Vec::len)
    }

    /// dim F_p C_t.
    fn k(&self, t: i64, p: i64) -> usize {
        self.by_t.get(&t).map_or(0, |ids| ids.partition_point(|&k| self.fc.levels[k] <= p))
    }

    fn vec_of(&self, t: i64, c: &Chain) -> Option<BitVec> {
        let local: Option<Vec<usize>> = c.iter().map(|k| self.pos.get(&k).copied()).collect();
        Some(BitVec::from_indices(self.n(t), local?))
    }

    fn chain_of(&self, t: i64, v: &BitVec) -> Chain {
        v.ones().map(|i| self.by_t[&t][i]).collect()
    }

    fn d(&self, t: i64, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.n(t - 1));
        for i in v.ones() {
            for b in &self.fc.complex.d[self.by_t[&t][i]] {
                out.flip(self.pos[b]);
            }
        }
        out
    }

    /// Z^r_p C_t = {x ∈ F_p : dx ∈ F_{p−r}}.
    fn z(&self, t: i64, p: i64, r: i64) -> Rc<Vec<BitVec>> {
        let kp = self.k(t, p);
        let below = self.n(t - 1);
        let kq = if r <= 0 { below } else { self.k(t - 1, p.saturating_sub(r)) };
        if let Some(z) = self.z_cache.borrow().get(&(t, kp, kq)) {
            return z.clone();
        }
        let n = self.n(t);
        let z: Vec<BitVec> = if kq == below {
            (0..kp).map(|i| BitVec::unit(n, i)).collect()
        } else {
            let cols: Vec<BitVec> = (0..kp).map(|i| self.d(t, &BitVec::unit(n, i)).slice(kq, below - kq)).collect();
            let m = BitMatrix::from_columns(below - kq, &cols).expect("columns have the row count");
            m.kernel_vectors(None)
                .into_iter()
                .map(|mut v| {
                    v.resize(n);
                    v
                })
                .collect()
        };
        let z = Rc::new(z);
        self.z_cache.borrow_mut().insert((t, kp, kq), z.clone());
        z
    }

    /// Z^{r−1}_{p−1} + d Z^{r−1}_{p+r−1}, the denominator of E^r_p in C_t.
    fn den(&self, t: i64, p: i64, r: i64) -> Echelon {
        let mut e = Echelon::new(self.n(t));
        for v in self.z(t, p - 1, r - 1).iter() {
            e.insert(v);
        }
        if self.n(t + 1) > 0 {
            for v in self.z(t + 1, p + r - 1, r - 1).iter() {
                e.insert(&self.d(t + 1, v));
            }
        }
        e
    }

    fn dim_e(&self, t: i64, p: i64, r: i64) -> usize {
        self.z(t, p, r).len() - self.den(t, p, r).dim()
    }

    fn rank_d(&self, t: i64, p: i64, r: i64) -> usize {
        if self.n(t - 1) == 0 {
            return 0;
        }
        let mut e = self.den(t - 1, p - r, r);
        let base = e.dim();
        for v in self.z(t, p, r).iter() {
            e.insert(&self.d(t, v));
        }
        e.dim() - base
    }

    /// (t, p) pairs with at least one basis element of level p in C_t.
    fn cells(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for (&t, ids) in &self.by_t {
            let mut levels: Vec<i64> = ids.iter().map(|&k| self.fc.levels[k]).collect();
            levels.dedup();
            out.extend(levels.into_iter().map(|p| (t, p)));
        }
        out
    }
}

impl FilteredComplex {
    pub fn new(complex: SparseComplex, levels: Vec<i64>) -> Result<Self, SsqError> {
        if levels.len() != complex.len() {
            return Err(SsqError::Shape);
        }
        if let Some(k) = (0..complex.len()).find(|&k| complex.d[k].iter().any(|&b| levels[b] > levels[k])) {
            return Err(SsqError::Filtration(k));
        }
        Ok(Self { complex, levels })
    }

    /// The ⊠ filtration by bar length.
    pub fn from_box(b: &BoxTensorComplex) -> Self {
        let levels = (0..b.len()).map(|k| b.bar_length(k) as i64).collect();
        Self { complex: b.complex.clone(), levels }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.complex.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for k in 0..n {
            for &b in &self.complex.d[k] {
                let (ra, rb) = (find(&mut parent, k), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for k in 0..n {
            let r = find(&mut parent, k);
            groups.entry(r).or_default().push(k);
        }
        groups.into_values().collect()
    }

    fn span(&self) -> i64 {
        match (self.levels.iter().min(), self.levels.iter().max()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// E⁰ … E^{r_max}, each with its d_r; checks E^{r+1} = H(E^r, d_r).
    pub fn pages(&self, r_max: usize) -> Result<Vec<Page>, SsqError> {
        let mut entries = vec![BTreeMap::<(i64, i64), usize>::new(); r_max + 1];
        let mut ranks = vec![BTreeMap::<(i64, i64), usize>::new(); r_max + 1];
        for comp in self.components() {
            let e = Engine::new(self, comp);
            for (t, p) in e.cells() {
                for r in 0..=r_max {
                    let ri = r as i64;
                    let dim = e.dim_e(t, p, ri);
                    if dim == 0 {
                        break;
                    }
                    *entries[r].entry((p, t - p)).or_default() += dim;
                    let rank = e.rank_d(t, p, ri);
                    if rank > 0 {
                        *ranks[r].entry((p, t - p)).or_default() += rank;
                    }
                }
            }
        }
        let convention = Convention::Standard;
        let mut pages = Vec::with_capacity(r_max + 1);
        for r in 0..=r_max {
            let (dp, dq) = convention.bidegree(r);
            let differentials = ranks[r].iter().map(|(&(p, q), &rank)| Arrow { source: (p, q), target: (p + dp, q + dq), rank }).collect();
            entries[r].retain(|_, v| *v > 0);
            pages.push(Page { r, entries: entries[r].clone(), differentials, provenance: Provenance::Computed, convention });
        }
        for w in pages.windows(2) {
            let next = w[0].homology();
            for cell in next.keys().chain(w[1].entries.keys()) {
                let (found, expected) = (w[1].get(*cell), next.get(cell).copied().unwrap_or(0));
                if found != expected {
                    return Err(SsqError::Inconsistent { r: w[1].r, cell: *cell, found, expected });
                }
            }
        }
        Ok(pages)
    }

    /// E^∞ as a page (equal to E^r for r beyond the filtration length).
    pub fn e_infinity(&self) -> Result<Page, SsqError> {
        let r = (self.span() + 1) as usize;
        let mut pages = self.pages(r)?;
        let mut last = pages.pop().expect("at least one page");
        last.differentials.clear();
        Ok(last)
    }

    /// Completes c (a chain in one degree, top level p) to an element of Z^r_p
    /// by adding terms of lower filtration, if possible.
    pub fn lift(&self, r: usize, c: &Chain) -> Option<Chain> {
        let t = *c.iter().next().map(|k| &self.complex.degrees[k])?;
        let p = c.iter().map(|k| self.levels[k]).max()?;
        let e = Engine::new(self, self.complex.by_degree().into_iter().filter(|(d, _)| (t - 1..=t).contains(d)).flat_map(|(_, v)| v));
        let v = e.vec_of(t, c)?;
        let below = e.n(t - 1);
        let kq = e.k(t - 1, p - r as i64);
        let target = e.d(t, &v).slice(kq, below - kq);
        if target.is_zero() {
            return Some(c.clone());
        }
        let k = e.k(t, p - 1);
        let cols: Vec<BitVec> = (0..k).map(|i| e.d(t, &BitVec::unit(e.n(t), i)).slice(kq, below - kq)).collect();
        let m = BitMatrix::from_columns(below - kq, &cols).expect("columns have the row count");
        let mut u = m.solve(&target)?;
        u.resize(e.n(t));
        u.xor_assign(&v);
        Some(e.chain_of(t, &u))
    }

    /// Whether c (in degree t) lies in the denominator Z^{r−1}_{p−1} + dZ^{r−1}_{p+r−1}
    /// of E^r_p, extended by the chains in `extra`.
    pub fn in_denominator(&self, r: usize, p: i64, t: i64, c: &Chain, extra: &[Chain]) -> bool {
        let e = Engine::new(self, self.complex.by_degree().into_iter().filter(|(d, _)| (t - 1..=t + 1).contains(d)).flat_map(|(_, v)| v));
        let mut den = e.den(t, p, r as i64);
        for x in extra {
            if let Some(v) = e.vec_of(t, x) {
                den.insert(&v);
            }
        }
        e.vec_of(t, c).is_some_and(|v| den.contains(&v))
    }

    pub fn boundary(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero();
        for k in c.iter() {
            for &b in &self.complex.d[k] {
                out.toggle(b);
            }
        }
        out
    }
}
