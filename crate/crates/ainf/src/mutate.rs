//! Single-entry mutations for exercising the checkers.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::{AInfAlgebra, AInfModule, Chain};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub op: String,
    pub inputs: Vec<usize>,
    pub toggled: usize,
}

/// Toggles one output basis element of one μ₂ value, keeping the grading.
pub fn mutate_algebra<R: Rng>(a: &AInfAlgebra, rng: &mut R) -> Option<(AInfAlgebra, Mutation)> {
    let b = a.basis();
    let n = b.len();
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| !b.in_degree(b.degree(x) + b.degree(y)).is_empty()).collect();
    let &(x, y) = pairs.choose(rng)?;
    let &t = b.in_degree(b.degree(x) + b.degree(y)).choose(rng)?;
    let mut out = a.mu(&[x, y]);
    out.toggle(t);
    let mut m = a.clone();
    m.set(&[x, y], out).ok()?;
    Some((m, Mutation { op: "mu2".into(), inputs: vec![x, y], toggled: t }))
}

/// Toggles one output basis element of one two-input module operation.
pub fn mutate_module<R: Rng>(m: &AInfModule, rng: &mut R) -> Option<(AInfModule, Mutation)> {
    let (mb, ab) = (m.basis(), m.algebra().basis());
    let mut candidates: Vec<(Vec<usize>, usize, Vec<usize>)> = Vec::new();
    for x in 0..mb.len() {
        for a in 0..ab.len() {
            if mb.in_degree(mb.degree(x) + ab.degree(a)).is_empty() {
                continue;
            }
            match m.side() {
                crate::Side::Right => candidates.push((vec![], x, vec![a])),
                crate::Side::Left => candidates.push((vec![a], x, vec![])),
                crate::Side::Bimodule => {
                    candidates.push((vec![], x, vec![a]));
                    candidates.push((vec![a], x, vec![]));
                }
            }
        }
    }
    let (left, x, right) = candidates.choose(rng)?.clone();
    let d = mb.degree(x) + left.iter().chain(&right).map(|&a| ab.degree(a)).sum::<i64>();
    let &t = mb.in_degree(d).choose(rng)?;
    let mut out: Chain = m.op(&left, x, &right);
    out.toggle(t);
    let mut mm = m.clone();
    mm.set(&left, x, &right, out).ok()?;
    let inputs = left.iter().copied().chain([x]).chain(right.iter().copied()).collect();
    Some((mm, Mutation { op: format!("m{},{}", left.len() + 1, right.len() + 1), inputs, toggled: t }))
}
