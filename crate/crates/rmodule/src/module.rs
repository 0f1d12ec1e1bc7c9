use std::collections::{BTreeMap, HashMap};

use gf2core::{BitMatrix, BitVec, GradedMap, GradedVectorSpace};
use num_rational::Ratio;
use ring_r::{Monomial, Precision};
use serde::{Deserialize, Serialize};

use crate::ModuleError;

/// A graded R_p-module supported in a finite degree window.
///
/// `reliable_lo` is the lowest degree in which the truncated module agrees
/// with the untruncated one it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    space: GradedVectorSpace,
    offset: Ratio<i64>,
    act_v: GradedMap,
    act_q: GradedMap,
    precision: Precision,
    reliable_lo: i64,
}

impl GradedModule {
    pub fn new(act_v: GradedMap, act_q: GradedMap, precision: Precision) -> Result<Self, ModuleError> {
        let space = act_v.source().clone();
        if act_v.shift() != -4 || act_v.target() != &space {
            return Err(ModuleError::BadAction("V"));
        }
        if act_q.shift() != -1 || act_q.source() != &space || act_q.target() != &space {
            return Err(ModuleError::BadAction("Q"));
        }
        let reliable_lo = space.window().0;
        Ok(Self { space, offset: Ratio::from_integer(0), act_v, act_q, precision, reliable_lo })
    }

    /// The module with both actions zero.
    pub fn trivial(space: GradedVectorSpace, precision: Precision) -> Self {
        let act_v = GradedMap::zero(space.clone(), space.clone(), -4);
        let act_q = GradedMap::zero(space.clone(), space.clone(), -1);
        Self::new(act_v, act_q, precision).expect("zero actions are well formed")
    }

    pub fn with_offset(mut self, offset: Ratio<i64>) -> Self {
        self.offset = offset;
        self
    }

    pub fn with_reliable_lo(mut self, lo: i64) -> Self {
        self.reliable_lo = lo.max(self.space.window().0);
        self
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn offset(&self) -> Ratio<i64> {
        self.offset
    }

    pub fn act_v(&self) -> &GradedMap {
        &self.act_v
    }

    pub fn act_q(&self) -> &GradedMap {
        &self.act_q
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn window(&self) -> (i64, i64) {
        self.space.window()
    }

    pub fn reliable_lo(&self) -> i64 {
        self.reliable_lo
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.space.dim(degree)
    }

    pub fn total_dim(&self) -> usize {
        self.space.total_dim()
    }

    /// Highest degree with a nonzero element.
    pub fn top(&self) -> Option<i64> {
        self.space.top()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.space.degrees().collect()
    }

    /// Checks Q³ = 0, VQ = QV and V^p = 0 blockwise.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let p = self.precision.get() as i64;
        for d in self.space.degrees() {
            let q = |e: i64| self.act_q.block(e);
            let v = |e: i64| self.act_v.block(e);
            let q3 = q(d - 2).mul(&q(d - 1).mul(&q(d)).unwrap()).unwrap();
            if !q3.is_zero() {
                failures.push(ValidationFailure::QCubed { degree: d });
            }
            let vq = v(d - 1).mul(&q(d)).unwrap();
            let qv = q(d - 4).mul(&v(d)).unwrap();
            if vq != qv {
                failures.push(ValidationFailure::NotCommuting { degree: d });
            }
            let mut vp = BitMatrix::identity(self.dim(d));
            for k in 0..p {
                vp = v(d - 4 * k).mul(&vp).unwrap();
            }
            if !vp.is_zero() {
                failures.push(ValidationFailure::VPower { degree: d });
            }
        }
        ValidationReport { failures }
    }

    pub fn shift(&self, k: i64) -> Result<GradedModule, ModuleError> {
        let overflow = || ModuleError::WindowOverflow(k);
        let (lo, hi) = self.window();
        let (lo, hi) = (lo.checked_add(k).ok_or_else(overflow)?, hi.checked_add(k).ok_or_else(overflow)?);
        let mut space = GradedVectorSpace::new(lo, hi);
        for d in self.space.degrees() {
            space.set_dim(d + k, self.dim(d))?;
            if let Some(l) = self.space.labels(d) {
                space.set_labels(d + k, l.to_vec())?;
            }
        }
        let move_map = |m: &GradedMap| -> Result<GradedMap, ModuleError> {
            let blocks = m.stored_blocks().iter().map(|(d, b)| (d + k, b.clone())).collect();
            Ok(GradedMap::new(space.clone(), space.clone(), m.shift(), blocks)?)
        };
        Ok(GradedModule {
            act_v: move_map(&self.act_v)?,
            act_q: move_map(&self.act_q)?,
            space: space.clone(),
            offset: self.offset,
            precision: self.precision,
            reliable_lo: self.reliable_lo + k,
        })
    }

    /// Direct sum, with the basis of `self` first in every degree.
    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule, ModuleError> {
        if self.precision != other.precision {
            return Err(ModuleError::PrecisionMismatch(self.precision.get(), other.precision.get()));
        }
        let (a, b) = (self.window(), other.window());
        let mut space = GradedVectorSpace::new(a.0.min(b.0), a.1.max(b.1));
        for d in self.space.degrees().chain(other.space.degrees()) {
            space.set_dim(d, self.dim(d) + other.dim(d))?;
        }
        let sum_map = |x: &GradedMap, y: &GradedMap| -> Result<GradedMap, ModuleError> {
            let mut blocks = BTreeMap::new();
            for d in space.degrees() {
                blocks.insert(d, block_diag(&x.block(d), &y.block(d))?);
            }
            Ok(GradedMap::new(space.clone(), space.clone(), x.shift(), blocks)?)
        };
        Ok(GradedModule {
            act_v: sum_map(&self.act_v, &other.act_v)?,
            act_q: sum_map(&self.act_q, &other.act_q)?,
            space: space.clone(),
            offset: self.offset,
            precision: self.precision,
            reliable_lo: self.reliable_lo.max(other.reliable_lo),
        })
    }

    /// Applies a monomial to a vector of degree `degree`.
    pub fn act(&self, m: Monomial, degree: i64, x: &BitVec) -> BitVec {
        let mut d = degree;
        let mut y = x.clone();
        for _ in 0..m.q {
            y = self.act_q.block(d).mul_vec(&y);
            d -= 1;
        }
        for _ in 0..m.v {
            y = self.act_v.block(d).mul_vec(&y);
            d -= 4;
        }
        y
    }

    /// Rank of every monomial action out of every degree; an isomorphism invariant.
    pub fn action_ranks(&self, from: i64) -> BTreeMap<(i64, Monomial), usize> {
        let table = ActionTable::new(self);
        let mut out = BTreeMap::new();
        for d in self.space.degrees().filter(|&d| d >= from) {
            for m in ring_r::monomials(self.precision) {
                if d + m.degree() < from {
                    continue;
                }
                let r = table.matrix(d, m).map_or(0, BitMatrix::rank);
                out.insert((d, m), r);
            }
        }
        out
    }

    pub fn to_json(&self) -> ModuleJson {
        let blocks = |g: &GradedMap| g.stored_blocks().iter().map(|(d, b)| (*d, b.to_u8_rows())).collect();
        ModuleJson {
            offset: self.offset.to_string(),
            window: [self.window().0, self.window().1],
            dims: self.space.dims().clone(),
            v: blocks(&self.act_v),
            q: blocks(&self.act_q),
            precision: self.precision.get(),
            reliable_lo: Some(self.reliable_lo),
            labels: self.space.degrees().filter_map(|d| self.space.labels(d).map(|l| (d, l.to_vec()))).collect(),
        }
    }

    pub fn from_json(j: &ModuleJson) -> Result<Self, ModuleError> {
        let precision = Precision::new(j.precision)?;
        let mut space = GradedVectorSpace::with_dims(j.window[0], j.window[1], j.dims.iter().map(|(d, n)| (*d, *n)))?;
        for (d, l) in &j.labels {
            space.set_labels(*d, l.clone())?;
        }
        let parse = |rows: &BTreeMap<i64, Vec<Vec<u8>>>, shift: i64| -> Result<GradedMap, ModuleError> {
            let mut blocks = BTreeMap::new();
            for (d, r) in rows {
                let m = if r.is_empty() { BitMatrix::zeros(0, space.dim(*d)) } else { BitMatrix::from_u8_rows(r)? };
                blocks.insert(*d, m);
            }
            Ok(GradedMap::new(space.clone(), space.clone(), shift, blocks)?)
        };
        let offset: Ratio<i64> = j.offset.parse().map_err(|_| ModuleError::Invalid(format!("bad offset {:?}", j.offset)))?;
        let mut m = GradedModule::new(parse(&j.v, -4)?, parse(&j.q, -1)?, precision)?.with_offset(offset);
        if let Some(lo) = j.reliable_lo {
            m = m.with_reliable_lo(lo);
        }
        Ok(m)
    }
}

fn block_diag(a: &BitMatrix, b: &BitMatrix) -> Result<BitMatrix, gf2core::Gf2Error> {
    let top = a.hstack(&BitMatrix::zeros(a.rows(), b.cols()))?;
    let bottom = BitMatrix::zeros(b.rows(), a.cols()).hstack(b)?;
    top.vstack(&bottom)
}

/// Serialized module: offset, window, dims, and the V/Q blocks keyed by source degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub offset: String,
    pub window: [i64; 2],
    pub dims: BTreeMap<i64, usize>,
    #[serde(rename = "V", default)]
    pub v: BTreeMap<i64, Vec<Vec<u8>>>,
    #[serde(rename = "Q", default)]
    pub q: BTreeMap<i64, Vec<Vec<u8>>>,
    pub precision: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reliable_lo: Option<i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<i64, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ValidationFailure {
    QCubed { degree: i64 },
    NotCommuting { degree: i64 },
    VPower { degree: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Matrices of every monomial action, precomputed per source degree.
#[derive(Clone, Debug)]
pub struct ActionTable {
    mats: HashMap<(i64, Monomial), BitMatrix>,
}

impl ActionTable {
    pub fn new(m: &GradedModule) -> Self {
        let mut mats = HashMap::new();
        for d in m.space.degrees() {
            let mut q_pow = BitMatrix::identity(m.dim(d));
            for q in 0..3u8 {
                if q > 0 {
                    q_pow = m.act_q.block(d - i64::from(q) + 1).mul(&q_pow).unwrap();
                }
                let mut cur = q_pow.clone();
                let mut e = d - i64::from(q);
                for v in 0..m.precision.get() {
                    if v > 0 {
                        cur = m.act_v.block(e).mul(&cur).unwrap();
                        e -= 4;
                    }
                    if cur.is_zero() {
                        break;
                    }
                    mats.insert((d, Monomial { v, q }), cur.clone());
                }
            }
        }
        Self { mats }
    }

    /// The matrix of `m` out of degree `d`; `None` means zero.
    pub fn matrix(&self, d: i64, m: Monomial) -> Option<&BitMatrix> {
        self.mats.get(&(d, m))
    }

    pub fn apply(&self, d: i64, m: Monomial, x: &BitVec, target_dim: usize) -> BitVec {
        match self.matrix(d, m) {
            Some(a) => a.mul_vec(x),
            None => BitVec::zeros(target_dim),
        }
    }
}
