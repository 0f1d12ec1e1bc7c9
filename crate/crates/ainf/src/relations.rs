use std::collections::HashMap;

use serde::Serialize;

use crate::{AInfAlgebra, AInfModule, Chain, GradedBasis, OpTable};

/// (module slot, input word).
type Key = (Option<usize>, Vec<usize>);

/// One family of operations on flat words; `mark` is the module slot, if any.
#[derive(Default)]
pub(crate) struct Ops<'a> {
    entries: Vec<(Option<usize>, &'a [usize], &'a Chain)>,
}

impl<'a> Ops<'a> {
    pub(crate) fn algebra(a: &'a AInfAlgebra) -> Self {
        let entries = a.tables().values().flat_map(|t| t.iter().map(|(k, v)| (None, k.as_slice(), v))).collect();
        Self { entries }
    }

    pub(crate) fn marked(tables: impl IntoIterator<Item = (&'a (usize, usize), &'a OpTable)>) -> Self {
        let entries = tables.into_iter().flat_map(|((i, _), t)| t.iter().map(move |(k, v)| (Some(i - 1), k.as_slice(), v))).collect();
        Self { entries }
    }

    pub(crate) fn module(m: &'a AInfModule) -> Self {
        Self::marked(m.tables())
    }
}

/// Accumulated value of a relation on each flat word.
#[derive(Default)]
pub(crate) struct Residue {
    pub(crate) values: HashMap<Key, Chain>,
    pub(crate) terms: usize,
}

impl Residue {
    pub(crate) fn add(&mut self, mark: Option<usize>, key: Vec<usize>, value: &Chain) {
        self.terms += 1;
        self.values.entry((mark, key)).or_default().add_assign(value);
    }

    pub(crate) fn add_ops(&mut self, ops: &Ops, n_max: usize) {
        for &(mark, key, value) in &ops.entries {
            if key.len() <= n_max {
                self.add(mark, key.to_vec(), value);
            }
        }
    }

    /// Adds every term outer(…, inner(…), …). A marked inner result fills the
    /// outer module slot; an unmarked one fills any other slot.
    pub(crate) fn compose(&mut self, outer: &Ops, inner: &Ops, n_max: usize) {
        let mut module_slot: HashMap<usize, Vec<usize>> = HashMap::new();
        let mut algebra_slot: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (e, &(mark, key, _)) in outer.entries.iter().enumerate() {
            for (pos, &b) in key.iter().enumerate() {
                if Some(pos) == mark {
                    module_slot.entry(b).or_default().push(e);
                } else {
                    algebra_slot.entry(b).or_default().push((e, pos));
                }
            }
        }
        for &(imark, ikey, iout) in &inner.entries {
            for b in iout.iter() {
                let hits: Vec<(usize, usize)> = match imark {
                    Some(_) => module_slot.get(&b).map_or(Vec::new(), |v| v.iter().map(|&e| (e, outer.entries[e].0.unwrap())).collect()),
                    None => algebra_slot.get(&b).cloned().unwrap_or_default(),
                };
                for (e, pos) in hits {
                    let (omark, okey, oout) = outer.entries[e];
                    let n = okey.len() + ikey.len() - 1;
                    if n > n_max {
                        continue;
                    }
                    let mut full = Vec::with_capacity(n);
                    full.extend_from_slice(&okey[..pos]);
                    full.extend_from_slice(ikey);
                    full.extend_from_slice(&okey[pos + 1..]);
                    let mark = match (imark, omark) {
                        (Some(m), _) => Some(pos + m),
                        (None, Some(o)) if o > pos => Some(o + ikey.len() - 1),
                        (None, o) => o,
                    };
                    self.add(mark, full, oout);
                }
            }
        }
    }

    pub(crate) fn report(
        self,
        relation: &str,
        n_max: usize,
        window: Option<(i64, i64)>,
        algebra: &GradedBasis,
        module: Option<&GradedBasis>,
        output: &GradedBasis,
    ) -> CheckReport {
        let basis_at = |mark: Option<usize>, pos: usize| if Some(pos) == mark { module.unwrap_or(algebra) } else { algebra };
        let in_window = |mark: Option<usize>, key: &[usize]| {
            window.is_none_or(|(lo, hi)| key.iter().enumerate().all(|(p, &id)| (lo..=hi).contains(&basis_at(mark, p).degree(id))))
        };
        let mut failures: Vec<(Key, Chain)> = self.values.into_iter().filter(|((m, k), v)| !v.is_zero() && in_window(*m, k)).collect();
        failures.sort_by(|a, b| (a.0 .1.len(), &a.0 .1, a.0 .0).cmp(&(b.0 .1.len(), &b.0 .1, b.0 .0)));
        let count = failures.len();
        let first_failure = failures.into_iter().next().map(|((mark, inputs), residue)| Failure {
            arity: inputs.len(),
            labels: inputs.iter().enumerate().map(|(p, &id)| basis_at(mark, p).label(id).to_string()).collect(),
            residue_labels: output.render(&residue),
            module_slot: mark,
            inputs,
            residue,
        });
        CheckReport { relation: relation.to_string(), n_max, window, terms: self.terms, failing_words: count, first_failure }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub arity: usize,
    pub inputs: Vec<usize>,
    pub module_slot: Option<usize>,
    pub labels: Vec<String>,
    pub residue: Chain,
    pub residue_labels: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub relation: String,
    pub n_max: usize,
    pub window: Option<(i64, i64)>,
    /// Nonzero composite terms evaluated.
    pub terms: usize,
    pub failing_words: usize,
    pub first_failure: Option<Failure>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.first_failure {
            None => write!(f, "{}: pass (n <= {}, {} terms)", self.relation, self.n_max, self.terms),
            Some(x) => write!(
                f,
                "{}: FAIL at n = {} on ({}) with residue {} ({} failing words)",
                self.relation,
                x.arity,
                x.labels.join(", "),
                x.residue_labels,
                self.failing_words
            ),
        }
    }
}

/// Σ μ_i(…, μ_j(…), …) = 0 for every word of length ≤ `n_max`.
pub fn check_algebra_relations(a: &AInfAlgebra, n_max: usize, window: Option<(i64, i64)>) -> CheckReport {
    let ops = Ops::algebra(a);
    let mut r = Residue::default();
    r.compose(&ops, &ops, n_max);
    r.report("algebra relations", n_max, window, a.basis(), None, a.basis())
}

/// The module relations: m∘m + m∘μ = 0 on every word of length ≤ `n_max`.
pub fn check_module_relations(m: &AInfModule, n_max: usize, window: Option<(i64, i64)>) -> CheckReport {
    module_relations(m, n_max, window, "module relations")
}

/// The bimodule relations; the same sums, with inner operations on both sides of x.
pub fn check_bimodule_relations(m: &AInfModule, n_max: usize, window: Option<(i64, i64)>) -> CheckReport {
    module_relations(m, n_max, window, "bimodule relations")
}

fn module_relations(m: &AInfModule, n_max: usize, window: Option<(i64, i64)>, name: &str) -> CheckReport {
    let (ops, mu) = (Ops::module(m), Ops::algebra(m.algebra()));
    let mut r = Residue::default();
    r.compose(&ops, &ops, n_max);
    r.compose(&ops, &mu, n_max);
    r.report(name, n_max, window, m.algebra().basis(), Some(m.basis()), m.basis())
}

/// The algebra relation evaluated on one word by direct summation.
pub fn algebra_relation_at(a: &AInfAlgebra, word: &[usize]) -> Chain {
    let n = word.len();
    let mut out = Chain::zero();
    for j in 1..=n {
        for l in 0..=n - j {
            let inner = a.mu(&word[l..l + j]);
            for b in inner.iter() {
                let mut w = word[..l].to_vec();
                w.push(b);
                w.extend_from_slice(&word[l + j..]);
                out.add_assign(&a.mu(&w));
            }
        }
    }
    out
}

/// The module relation evaluated on one word with x at `slot`, by direct summation.
pub fn module_relation_at(m: &AInfModule, word: &[usize], slot: usize) -> Chain {
    let n = word.len();
    let mut out = Chain::zero();
    let outer = |w: &[usize], s: usize| m.op(&w[..s], w[s], &w[s + 1..]);
    for j in 1..=n {
        for l in 0..=n - j {
            let span = l..l + j;
            if span.contains(&slot) {
                let inner = m.op(&word[l..slot], word[slot], &word[slot + 1..l + j]);
                for b in inner.iter() {
                    let mut w = word[..l].to_vec();
                    w.push(b);
                    w.extend_from_slice(&word[l + j..]);
                    out.add_assign(&outer(&w, l));
                }
            } else {
                let inner = m.algebra().mu(&word[l..l + j]);
                let new_slot = if slot > l { slot - j + 1 } else { slot };
                for b in inner.iter() {
                    let mut w = word[..l].to_vec();
                    w.push(b);
                    w.extend_from_slice(&word[l + j..]);
                    out.add_assign(&outer(&w, new_slot));
                }
            }
        }
    }
    out
}
