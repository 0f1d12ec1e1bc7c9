use std::collections::BTreeMap;

use ainf::{AInfModule, Chain, GradedBasis, Side};

use crate::{box_tensor, BoxError, BoxParams, BoxTensorComplex, BoxWord};

/// M ⊠ N for a bimodule M, as a left module over A:
/// m₁ is the box differential and for k ≥ 2
/// m_k(a₁,…,a_{k−1}, x[b₁|…|bₙ]y) = Σ_l m_{k,l}(a₁,…,a_{k−1}, x, b₁,…,b_{l−1})[b_l|…|bₙ]y.
pub fn left_module_on_box(m: &AInfModule, n: &AInfModule, params: BoxParams) -> Result<(BoxTensorComplex, AInfModule), BoxError> {
    if m.side() != Side::Bimodule {
        return Err(BoxError::Side("the first factor must be a bimodule"));
    }
    let bx = box_tensor(m, n, params)?;
    let basis = GradedBasis::from_parts(bx.complex.degrees.clone(), (0..bx.len()).map(|k| bx.label(k).to_string()).collect());
    let mut out = AInfModule::new(format!("{} box {}", m.name, n.name), Side::Left, basis, m.algebra().clone());
    for k in 0..bx.len() {
        out.set_left(&[], k, bx.boundary(k))?;
    }

    let mut by_x: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, w) in bx.words.iter().enumerate() {
        by_x.entry(w.x).or_default().push(k);
    }
    let mut acc: BTreeMap<(Vec<usize>, usize), Chain> = BTreeMap::new();
    for (&(i, l), table) in m.tables() {
        if i < 2 {
            continue;
        }
        for (key, image) in table {
            let (left, rest) = key.split_at(i - 1);
            let (x, prefix) = (rest[0], &rest[1..]);
            for &w in by_x.get(&x).into_iter().flatten() {
                let word = &bx.words[w];
                if !word.slots.starts_with(prefix) || prefix.len() != l - 1 {
                    continue;
                }
                let entry = acc.entry((left.to_vec(), w)).or_default();
                for x2 in image.iter() {
                    let target = BoxWord { x: x2, slots: word.slots[l - 1..].to_vec(), y: word.y };
                    if let Some(t) = bx.find(&target) {
                        entry.toggle(t);
                    }
                }
            }
        }
    }
    for ((left, w), c) in acc {
        out.set_left(&left, w, c)?;
    }
    Ok((bx, out))
}
