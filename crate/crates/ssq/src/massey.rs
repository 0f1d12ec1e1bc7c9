use std::collections::BTreeMap;

use ainf::{massey3, massey3_bimodule, massey3_module, AInfModule, Chain, MasseyCoset, Pivoting};
use boxtensor::{left_module_on_box, BoxParams, BoxTensorComplex, BoxWord};
use gf2core::{BitVec, Echelon};
use serde::Serialize;

use crate::{EmSpectralSequence, SsqError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MasseyOutcome {
    Agrees,
    Disagrees,
    /// Formula not applicable, with the reason.
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasseyCheck {
    pub word: String,
    /// Σ of the consecutive triple products, placed in the word.
    pub formula: String,
    /// d of a lift of the word to Z².
    pub computed: String,
    pub outcome: MasseyOutcome,
}

impl MasseyCheck {
    fn skip(word: String, reason: impl Into<String>) -> Self {
        MasseyCheck { word, formula: String::new(), computed: String::new(), outcome: MasseyOutcome::NotApplicable(reason.into()) }
    }
}

fn embed(b: &BoxTensorComplex, words: impl IntoIterator<Item = BoxWord>) -> Chain {
    words.into_iter().filter_map(|w| b.find(&w)).fold(Chain::zero(), |mut acc, k| {
        acc.toggle(k);
        acc
    })
}

/// Compares d₂ of the class of `word` with the sum over consecutive triples
/// ⟨x, a₁, a₂⟩, ⟨a_k, a_{k+1}, a_{k+2}⟩ and ⟨a_{n−1}, a_n, y⟩, modulo the
/// indeterminacies of those products.
pub fn massey_differential_check(em: &EmSpectralSequence, m: &AInfModule, n: &AInfModule, word: &BoxWord) -> MasseyCheck {
    let b = &em.box_complex;
    let Some(id) = b.find(word) else {
        return MasseyCheck::skip(format!("{word:?}"), "word outside the truncation");
    };
    let label = b.label(id).to_string();
    let Some(lift) = em.filtered.lift(2, &Chain::basis(id)) else {
        return MasseyCheck::skip(label, "class does not survive to E2");
    };
    let computed = em.filtered.boundary(&lift);
    let s = &word.slots;
    let len = s.len();
    let mut formula = Chain::zero();
    let mut extra = Vec::new();
    let mut add = |coset: &MasseyCoset, place: &dyn Fn(usize) -> BoxWord| {
        formula.add_assign(&embed(b, coset.representative.iter().map(place)));
        for g in &coset.indeterminacy {
            extra.push(embed(b, g.iter().map(place)));
        }
    };
    if len >= 2 {
        let basis = Chain::basis;
        let left = massey3_module(m, &basis(word.x), &basis(s[0]), &basis(s[1]), Pivoting::Natural);
        let right = massey3_module(&n.opposite(), &basis(word.y), &basis(s[len - 1]), &basis(s[len - 2]), Pivoting::Natural);
        let (left, right) = match (left, right) {
            (Ok(l), Ok(r)) => (l, r),
            (Err(e), _) | (_, Err(e)) => return MasseyCheck::skip(label, e.to_string()),
        };
        add(&left, &|x2| BoxWord { x: x2, slots: s[2..].to_vec(), y: word.y });
        for k in 0..len.saturating_sub(2) {
            let coset = match massey3(m.algebra(), [&basis(s[k]), &basis(s[k + 1]), &basis(s[k + 2])], Pivoting::Natural) {
                Ok(c) => c,
                Err(e) => return MasseyCheck::skip(label, e.to_string()),
            };
            add(&coset, &|c| {
                let mut slots = s[..k].to_vec();
                slots.push(c);
                slots.extend_from_slice(&s[k + 3..]);
                BoxWord { x: word.x, slots, y: word.y }
            });
        }
        add(&right, &|y2| BoxWord { x: word.x, slots: s[..len - 2].to_vec(), y: y2 });
    }
    let p = len as i64;
    let t = b.total_degree(id);
    let agrees = em.filtered.in_denominator(2, p - 2, t - 1, &(&computed + &formula), &extra);
    MasseyCheck {
        word: label,
        formula: b.render(&formula),
        computed: b.render(&computed),
        outcome: if agrees { MasseyOutcome::Agrees } else { MasseyOutcome::Disagrees },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionCheck {
    pub word: String,
    /// m₂(r, x[r₁]y) in M ⊠ N.
    pub action: String,
    /// ⟨r, x, r₁⟩ ⊗ y.
    pub massey: String,
    pub outcome: MasseyOutcome,
}

/// For a bimodule M: the class of m₂(r, x[r₁]y) against ⟨r, x, r₁⟩[ ]y in H(M ⊠ N).
pub fn module_action_check(m: &AInfModule, n: &AInfModule, params: BoxParams, (r, x, r1, y): (usize, usize, usize, usize)) -> Result<ActionCheck, SsqError> {
    let (b, left) = left_module_on_box(m, n, params)?;
    let w = BoxWord { x, slots: vec![r1], y };
    let Some(id) = b.find(&w) else {
        return Err(SsqError::Unsupported("word outside the truncation".into()));
    };
    let label = b.label(id).to_string();
    let skip = |why: String| ActionCheck { word: label.clone(), action: String::new(), massey: String::new(), outcome: MasseyOutcome::NotApplicable(why) };
    if !b.boundary(id).is_zero() {
        return Ok(skip("word is not a cycle".into()));
    }
    let coset = match massey3_bimodule(m, &Chain::basis(r), &Chain::basis(x), &Chain::basis(r1), Pivoting::Natural) {
        Ok(c) => c,
        Err(e) => return Ok(skip(e.to_string())),
    };
    let action = left.op(&[r], id, &[]);
    let place = |x2: usize| BoxWord { x: x2, slots: Vec::new(), y };
    let massey = embed(&b, coset.representative.iter().map(place));
    let extra: Vec<Chain> = coset.indeterminacy.iter().map(|g| embed(&b, g.iter().map(place))).collect();
    let agrees = in_homology_span(&b, &(&action + &massey), &extra);
    Ok(ActionCheck {
        word: label,
        action: b.render(&action),
        massey: b.render(&massey),
        outcome: if agrees { MasseyOutcome::Agrees } else { MasseyOutcome::Disagrees },
    })
}

/// Whether c lies in the span of the boundaries and `extra`.
fn in_homology_span(b: &BoxTensorComplex, c: &Chain, extra: &[Chain]) -> bool {
    let Some(t) = c.iter().next().map(|k| b.total_degree(k)) else { return true };
    let groups = b.complex.by_degree();
    let empty = Vec::new();
    let ids = groups.get(&t).unwrap_or(&empty);
    let pos: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let vec = |ch: &Chain| -> Option<BitVec> {
        let local: Option<Vec<usize>> = ch.iter().map(|k| pos.get(&k).copied()).collect();
        Some(BitVec::from_indices(ids.len(), local?))
    };
    let mut span = Echelon::new(ids.len());
    for &k in groups.get(&(t + 1)).unwrap_or(&empty) {
        if let Some(v) = vec(&b.boundary(k)) {
            span.insert(&v);
        }
    }
    for e in extra {
        if let Some(v) = vec(e) {
            span.insert(&v);
        }
    }
    vec(c).is_some_and(|v| span.contains(&v))
}
