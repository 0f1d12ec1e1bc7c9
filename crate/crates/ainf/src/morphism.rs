use std::collections::BTreeMap;
use std::sync::Arc;

use crate::relations::{Ops, Residue};
use crate::{AInfError, AInfModule, Chain, CheckReport, OpTable};

/// An A∞-morphism of modules with components f_{i,j}, |f| = (inputs) − 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfMorphism {
    pub source: Arc<AInfModule>,
    pub target: Arc<AInfModule>,
    comps: BTreeMap<(usize, usize), OpTable>,
}

/// Components h_{i,j} with |h| = inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfHomotopy {
    pub source: Arc<AInfModule>,
    pub target: Arc<AInfModule>,
    comps: BTreeMap<(usize, usize), OpTable>,
}

fn set_component(
    comps: &mut BTreeMap<(usize, usize), OpTable>,
    source: &AInfModule,
    target: &AInfModule,
    extra: i64,
    (left, x, right): (&[usize], usize, &[usize]),
    output: Chain,
) -> Result<(), AInfError> {
    let a = source.algebra().basis();
    let k = left.len() + right.len() + 1;
    let expected = left.iter().chain(right).map(|&i| a.degree(i)).sum::<i64>() + source.basis().degree(x) + k as i64 - 1 + extra;
    let key: Vec<usize> = left.iter().copied().chain([x]).chain(right.iter().copied()).collect();
    if output.iter().any(|o| o >= target.basis().len() || target.basis().degree(o) != expected) {
        return Err(AInfError::Degree { op: format!("component {}", k), inputs: key, expected });
    }
    let slot = (left.len() + 1, right.len() + 1);
    if output.is_zero() {
        if let Some(t) = comps.get_mut(&slot) {
            t.remove(&key);
            if t.is_empty() {
                comps.remove(&slot);
            }
        }
    } else {
        comps.entry(slot).or_default().insert(key, output);
    }
    Ok(())
}

fn same_algebra(a: &AInfModule, b: &AInfModule) -> Result<(), AInfError> {
    if a.side() != b.side() || a.algebra() != b.algebra() {
        return Err(AInfError::Kind(format!("{} and {} are not modules of the same kind", a.name, b.name)));
    }
    Ok(())
}

impl AInfMorphism {
    pub fn new(source: Arc<AInfModule>, target: Arc<AInfModule>) -> Result<Self, AInfError> {
        same_algebra(&source, &target)?;
        Ok(Self { source, target, comps: BTreeMap::new() })
    }

    pub fn set(&mut self, left: &[usize], x: usize, right: &[usize], output: Chain) -> Result<(), AInfError> {
        set_component(&mut self.comps, &self.source, &self.target, 0, (left, x, right), output)
    }

    pub fn apply(&self, left: &[usize], x: usize, right: &[usize]) -> Chain {
        let key: Vec<usize> = left.iter().copied().chain([x]).chain(right.iter().copied()).collect();
        self.comps.get(&(left.len() + 1, right.len() + 1)).and_then(|t| t.get(&key)).cloned().unwrap_or_default()
    }

    /// f₁ extended linearly.
    pub fn apply_linear(&self, c: &Chain) -> Chain {
        let mut out = Chain::zero();
        for x in c.iter() {
            out.add_assign(&self.apply(&[], x, &[]));
        }
        out
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), OpTable> {
        &self.comps
    }
}

impl AInfHomotopy {
    pub fn new(source: Arc<AInfModule>, target: Arc<AInfModule>) -> Result<Self, AInfError> {
        same_algebra(&source, &target)?;
        Ok(Self { source, target, comps: BTreeMap::new() })
    }

    pub fn set(&mut self, left: &[usize], x: usize, right: &[usize], output: Chain) -> Result<(), AInfError> {
        set_component(&mut self.comps, &self.source, &self.target, 1, (left, x, right), output)
    }

    pub fn apply(&self, left: &[usize], x: usize, right: &[usize]) -> Chain {
        let key: Vec<usize> = left.iter().copied().chain([x]).chain(right.iter().copied()).collect();
        self.comps.get(&(left.len() + 1, right.len() + 1)).and_then(|t| t.get(&key)).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> &BTreeMap<(usize, usize), OpTable> {
        &self.comps
    }
}

/// I₁ = id and all higher components zero.
pub fn identity(m: &Arc<AInfModule>) -> AInfMorphism {
    let mut f = AInfMorphism { source: m.clone(), target: m.clone(), comps: BTreeMap::new() };
    for x in 0..m.basis().len() {
        f.set(&[], x, &[], Chain::basis(x)).expect("identity preserves degree");
    }
    f
}

/// (g ∘ f)_n = Σ g(f(…), …).
pub fn compose(f: &AInfMorphism, g: &AInfMorphism) -> Result<AInfMorphism, AInfError> {
    if f.target != g.source {
        return Err(AInfError::Kind("target of f is not the source of g".into()));
    }
    let n_max = f.comps.values().chain(g.comps.values()).flat_map(|t| t.keys().map(Vec::len)).max().unwrap_or(1) * 2;
    let mut r = Residue::default();
    r.compose(&Ops::marked(&g.comps), &Ops::marked(&f.comps), n_max);
    let mut out = AInfMorphism { source: f.source.clone(), target: g.target.clone(), comps: BTreeMap::new() };
    for ((mark, key), value) in r.values {
        if !value.is_zero() {
            let m = mark.expect("morphism words carry a module slot");
            out.comps.entry((m + 1, key.len() - m)).or_default().insert(key, value);
        }
    }
    Ok(out)
}

/// m'∘f + f∘m + f∘μ = 0 on every word of length ≤ `n_max`.
pub fn check_morphism(f: &AInfMorphism, n_max: usize, window: Option<(i64, i64)>) -> CheckReport {
    let (fo, m, mp, mu) = (Ops::marked(&f.comps), Ops::module(&f.source), Ops::module(&f.target), Ops::algebra(f.source.algebra()));
    let mut r = Residue::default();
    r.compose(&mp, &fo, n_max);
    r.compose(&fo, &m, n_max);
    r.compose(&fo, &mu, n_max);
    r.report("morphism relations", n_max, window, f.source.algebra().basis(), Some(f.source.basis()), f.target.basis())
}

/// f + g = h∘m + m'∘h + h∘μ on every word of length ≤ `n_max`.
pub fn check_homotopy(f: &AInfMorphism, g: &AInfMorphism, h: &AInfHomotopy, n_max: usize, window: Option<(i64, i64)>) -> Result<CheckReport, AInfError> {
    if f.source != g.source || f.target != g.target || f.source != h.source || f.target != h.target {
        return Err(AInfError::Kind("morphisms and homotopy must share source and target".into()));
    }
    let ho = Ops::marked(&h.comps);
    let (m, mp, mu) = (Ops::module(&f.source), Ops::module(&f.target), Ops::algebra(f.source.algebra()));
    let mut r = Residue::default();
    r.add_ops(&Ops::marked(&f.comps), n_max);
    r.add_ops(&Ops::marked(&g.comps), n_max);
    r.compose(&ho, &m, n_max);
    r.compose(&mp, &ho, n_max);
    r.compose(&ho, &mu, n_max);
    Ok(r.report("homotopy relations", n_max, window, f.source.algebra().basis(), Some(f.source.basis()), f.target.basis()))
}
