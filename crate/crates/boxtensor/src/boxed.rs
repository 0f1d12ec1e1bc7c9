use std::collections::{BTreeMap, HashMap};

use ainf::{check_algebra_relations, check_bimodule_relations, check_module_relations, AInfAlgebra, AInfModule, Chain, Side};
use serde::Serialize;

use crate::{BoxError, SparseComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Slots {
    /// Every basis element of A.
    Full,
    /// The augmentation ideal only (normalized bar construction).
    Reduced,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoxParams {
    pub n_max: usize,
    /// Words with internal degree below this are dropped.
    pub j_min: i64,
    pub slots: Slots,
}

impl BoxParams {
    pub fn new(n_max: usize, j_min: i64) -> Self {
        Self { n_max, j_min, slots: Slots::Reduced }
    }

    /// Highest total degree whose homology the truncation computes exactly.
    pub fn exact_through(&self) -> i64 {
        self.n_max as i64 + self.j_min - 1
    }
}

/// x ⊗ [a₁|…|aₙ] ⊗ y.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoxWord {
    pub x: usize,
    pub slots: Vec<usize>,
    pub y: usize,
}

/// The truncated complex M ⊠ N with total degree n + j, where n is the number
/// of bar slots and j the internal degree.
#[derive(Clone, Debug)]
pub struct BoxTensorComplex {
    pub params: BoxParams,
    pub words: Vec<BoxWord>,
    pub internal: Vec<i64>,
    pub complex: SparseComplex,
    labels: Vec<String>,
    index: HashMap<BoxWord, usize>,
}

#[derive(Serialize)]
struct BoxJson<'a> {
    params: &'a BoxParams,
    words: Vec<WordJson<'a>>,
}

#[derive(Serialize)]
struct WordJson<'a> {
    label: &'a str,
    bar_length: usize,
    internal_degree: i64,
    total_degree: i64,
    boundary: &'a [usize],
}

impl BoxTensorComplex {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn find(&self, w: &BoxWord) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.labels[id]
    }

    pub fn bar_length(&self, id: usize) -> usize {
        self.words[id].slots.len()
    }

    pub fn total_degree(&self, id: usize) -> i64 {
        self.complex.degrees[id]
    }

    pub fn boundary(&self, id: usize) -> Chain {
        self.complex.d[id].iter().copied().collect()
    }

    /// Homology per total degree, including degrees the truncation distorts.
    pub fn homology(&self) -> BTreeMap<i64, usize> {
        self.complex.homology()
    }

    /// Homology in total degrees ≤ `exact_through`, where the truncation is exact.
    pub fn exact_homology(&self) -> BTreeMap<i64, usize> {
        let top = self.params.exact_through();
        self.homology().into_iter().filter(|(t, _)| *t <= top).collect()
    }

    pub fn render(&self, c: &Chain) -> String {
        if c.is_zero() {
            return "0".into();
        }
        c.iter().map(|k| self.labels[k].as_str()).collect::<Vec<_>>().join(" + ")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let words = (0..self.len())
            .map(|k| WordJson {
                label: &self.labels[k],
                bar_length: self.bar_length(k),
                internal_degree: self.internal[k],
                total_degree: self.total_degree(k),
                boundary: &self.complex.d[k],
            })
            .collect();
        serde_json::to_value(BoxJson { params: &self.params, words }).expect("plain data serializes")
    }
}

fn check_inputs(m: &AInfModule, n: &AInfModule, n_max: usize) -> Result<(), BoxError> {
    if m.algebra() != n.algebra() {
        return Err(BoxError::AlgebraMismatch);
    }
    if m.side() == Side::Left {
        return Err(BoxError::Side("the first factor must carry a right action"));
    }
    if n.side() == Side::Right {
        return Err(BoxError::Side("the second factor must carry a left action"));
    }
    let order = n_max + 2;
    let reports = [check_algebra_relations(m.algebra(), order, None), relation_report(m, order), relation_report(n, order)];
    match reports.into_iter().find(|r| !r.passed()) {
        Some(r) => Err(BoxError::Relations(Box::new(r))),
        None => Ok(()),
    }
}

fn relation_report(m: &AInfModule, order: usize) -> ainf::CheckReport {
    match m.side() {
        Side::Bimodule => check_bimodule_relations(m, order, None),
        _ => check_module_relations(m, order, None),
    }
}

fn slot_set(a: &AInfAlgebra, slots: Slots) -> Result<Vec<usize>, BoxError> {
    match slots {
        Slots::Full => Ok((0..a.basis().len()).collect()),
        Slots::Reduced => {
            let unit = a.unit();
            for t in a.tables().values() {
                for (inputs, out) in t {
                    if inputs.iter().all(|&i| Some(i) != unit) && unit.is_some_and(|u| out.contains(u)) {
                        return Err(BoxError::NotAugmented(a.basis().render(&inputs.iter().copied().collect())));
                    }
                }
            }
            Ok(a.augmentation_ideal())
        }
    }
}

/// Builds M ⊠ N for a right (or bi-) module M and a left (or bi-) module N over
/// the same algebra, after checking their relations through arity n_max + 2.
pub fn box_tensor(m: &AInfModule, n: &AInfModule, params: BoxParams) -> Result<BoxTensorComplex, BoxError> {
    check_inputs(m, n, params.n_max)?;
    let a = m.algebra();
    let slots = slot_set(a, params.slots)?;
    let ab = a.basis();
    let max_slot = slots.iter().map(|&s| ab.degree(s)).max().unwrap_or(0).max(0);

    let mut words = Vec::new();
    let mut internal = Vec::new();
    for x in 0..m.basis().len() {
        for y in 0..n.basis().len() {
            let j0 = m.basis().degree(x) + n.basis().degree(y);
            let mut stack = vec![(Vec::new(), j0)];
            while let Some((prefix, j)) = stack.pop() {
                if j >= params.j_min {
                    words.push(BoxWord { x, slots: prefix.clone(), y });
                    internal.push(j);
                }
                let room = params.n_max - prefix.len();
                if room == 0 || j + room as i64 * max_slot < params.j_min {
                    continue;
                }
                for &s in slots.iter().rev() {
                    let mut next = prefix.clone();
                    next.push(s);
                    stack.push((next, j + ab.degree(s)));
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..words.len()).collect();
    order.sort_by(|&p, &q| (words[p].slots.len(), &words[p]).cmp(&(words[q].slots.len(), &words[q])));
    let words: Vec<BoxWord> = order.iter().map(|&k| words[k].clone()).collect();
    let internal: Vec<i64> = order.iter().map(|&k| internal[k]).collect();
    let index: HashMap<BoxWord, usize> = words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();

    let allowed = |b: usize| params.slots == Slots::Full || Some(b) != a.unit();
    let mut d = Vec::with_capacity(words.len());
    for w in &words {
        let mut out = Chain::zero();
        let mut emit = |x: usize, s: Vec<usize>, y: usize| {
            if let Some(&k) = index.get(&BoxWord { x, slots: s, y }) {
                out.toggle(k);
            }
        };
        let len = w.slots.len();
        for k in 0..=len {
            for x2 in m.op(&[], w.x, &w.slots[..k]).iter() {
                emit(x2, w.slots[k..].to_vec(), w.y);
            }
        }
        for start in 0..len {
            for end in start + 1..=len {
                for b in a.mu(&w.slots[start..end]).iter().filter(|&b| allowed(b)) {
                    let mut s = w.slots[..start].to_vec();
                    s.push(b);
                    s.extend_from_slice(&w.slots[end..]);
                    emit(w.x, s, w.y);
                }
            }
        }
        for k in 0..=len {
            for y2 in n.op(&w.slots[len - k..], w.y, &[]).iter() {
                emit(w.x, w.slots[..len - k].to_vec(), y2);
            }
        }
        d.push(out.iter().collect::<Vec<_>>());
    }

    let abasis = ab;
    let labels: Vec<String> = words
        .iter()
        .map(|w| {
            let bar: Vec<&str> = w.slots.iter().map(|&s| abasis.label(s)).collect();
            format!("{}[{}]{}", m.basis().label(w.x), bar.join("|"), n.basis().label(w.y))
        })
        .collect();
    let degrees = words.iter().zip(&internal).map(|(w, j)| j + w.slots.len() as i64).collect();
    let complex = SparseComplex { degrees, d };
    if let Some(k) = complex.square_defect() {
        return Err(BoxError::NotAComplex(labels[k].clone()));
    }
    Ok(BoxTensorComplex { params, words, internal, complex, labels, index })
}
