use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::homology::Complex;
use crate::{AInfAlgebra, AInfError, AInfModule, Chain, Side};

/// Column order used when solving for witnesses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pivoting {
    #[default]
    Natural,
    Shuffled(u64),
}

struct Solver {
    rng: Option<ChaCha8Rng>,
}

impl Solver {
    fn new(p: Pivoting) -> Self {
        Self {
            rng: match p {
                Pivoting::Natural => None,
                Pivoting::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            },
        }
    }

    fn solve(&mut self, cx: &Complex, deg: i64, target: &Chain, what: &str) -> Result<Chain, AInfError> {
        let n = cx.basis().in_degree(deg + 1).len();
        let order = self.rng.as_mut().map(|rng| {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(rng);
            o
        });
        cx.solve(deg, target, order.as_deref())
            .ok_or_else(|| AInfError::Undefined { product: what.to_string(), obstruction: cx.basis().render(&cx.reduce(deg, target, &[])) })
    }
}

/// A Massey product class: canonical representative modulo boundaries and indeterminacy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MasseyCoset {
    pub degree: i64,
    pub representative: Chain,
    pub canonical: Chain,
    pub indeterminacy: Vec<Chain>,
    pub witnesses: Vec<Chain>,
}

impl MasseyCoset {
    pub fn is_zero(&self) -> bool {
        self.canonical.is_zero()
    }
}

fn degree_of(basis: &crate::GradedBasis, c: &Chain, name: &str) -> Result<i64, AInfError> {
    basis.chain_degree(c).ok_or_else(|| AInfError::NotACycle(format!("{name} is zero or inhomogeneous")))
}

fn require_cycle(cx: &Complex, c: &Chain, name: &str) -> Result<i64, AInfError> {
    let d = degree_of(cx.basis(), c, name)?;
    if !cx.is_cycle(c) {
        return Err(AInfError::NotACycle(name.to_string()));
    }
    Ok(d)
}

/// Reduced generators of the indeterminacy, independent modulo boundaries.
fn independent_mod_boundaries(cx: &Complex, deg: i64, gens: Vec<Chain>) -> Vec<Chain> {
    let mut kept = Vec::new();
    for g in gens {
        let r = cx.reduce(deg, &g, &kept);
        if !r.is_zero() {
            kept.push(r);
        }
    }
    kept
}

/// ⟨a₁,a₂,a₃⟩ = [μ₃(a₁,a₂,a₃) + μ₂(s₁,a₃) + μ₂(a₁,s₂)] in degree Σ + 1.
pub fn massey3(a: &AInfAlgebra, x: [&Chain; 3], pivoting: Pivoting) -> Result<MasseyCoset, AInfError> {
    let cx = Complex::of_algebra(a);
    let d: Vec<i64> = x.iter().enumerate().map(|(k, c)| require_cycle(&cx, c, &format!("a{}", k + 1))).collect::<Result<_, _>>()?;
    let mut solver = Solver::new(pivoting);
    let s1 = solver.solve(&cx, d[0] + d[1], &a.mu_chains(&[x[0], x[1]]), "a1 a2")?;
    let s2 = solver.solve(&cx, d[1] + d[2], &a.mu_chains(&[x[1], x[2]]), "a2 a3")?;
    let mut rep = a.mu_chains(&[x[0], x[1], x[2]]);
    rep.add_assign(&a.mu_chains(&[&s1, x[2]]));
    rep.add_assign(&a.mu_chains(&[x[0], &s2]));
    let degree = d.iter().sum::<i64>() + 1;
    let indeterminacy: Vec<Chain> = cx
        .homology_basis(d[1] + d[2] + 1)
        .iter()
        .map(|z| a.mu_chains(&[x[0], z]))
        .chain(cx.homology_basis(d[0] + d[1] + 1).iter().map(|z| a.mu_chains(&[z, x[2]])))
        .collect();
    let indeterminacy = independent_mod_boundaries(&cx, degree, indeterminacy);
    let canonical = cx.reduce(degree, &rep, &indeterminacy);
    Ok(MasseyCoset { degree, representative: rep, canonical, indeterminacy, witnesses: vec![s1, s2] })
}

/// The classes of ⟨a₁,a₂,a₃,a₄⟩ over all defining systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Massey4 {
    pub degree: i64,
    pub classes: BTreeSet<Chain>,
    pub defining_systems: usize,
    /// False when the witness space was too large to enumerate.
    pub exhaustive: bool,
}

impl Massey4 {
    pub fn contains(&self, a: &AInfAlgebra, c: &Chain) -> bool {
        self.classes.contains(&Complex::of_algebra(a).reduce(self.degree, c, &[]))
    }
}

pub const MASSEY4_ENUMERATION_LIMIT: u32 = 16;

fn span_sums(base: &Chain, gens: &[Chain], mask: u64) -> Chain {
    let mut c = base.clone();
    for (k, g) in gens.iter().enumerate() {
        if mask >> k & 1 == 1 {
            c.add_assign(g);
        }
    }
    c
}

/// Witnesses vary by homology representatives; changing one by a boundary is absorbed
/// by the next witness and does not change the class.
pub fn massey4(a: &AInfAlgebra, x: [&Chain; 4]) -> Result<Massey4, AInfError> {
    let cx = Complex::of_algebra(a);
    let d: Vec<i64> = x.iter().enumerate().map(|(k, c)| require_cycle(&cx, c, &format!("a{}", k + 1))).collect::<Result<_, _>>()?;
    let mut solver = Solver::new(Pivoting::Natural);
    let s0: Vec<Chain> =
        (0..3).map(|k| solver.solve(&cx, d[k] + d[k + 1], &a.mu_chains(&[x[k], x[k + 1]]), &format!("a{} a{}", k + 1, k + 2))).collect::<Result<_, _>>()?;
    let s_var: Vec<Vec<Chain>> = (0..3).map(|k| cx.homology_basis(d[k] + d[k + 1] + 1)).collect();
    let t_var: Vec<Vec<Chain>> = (0..2).map(|k| cx.homology_basis(d[k] + d[k + 1] + d[k + 2] + 2)).collect();
    let total: usize = s_var.iter().chain(&t_var).map(Vec::len).sum();
    let exhaustive = total as u32 <= MASSEY4_ENUMERATION_LIMIT;
    let degree = d.iter().sum::<i64>() + 2;
    let s_bits: Vec<usize> = s_var.iter().map(Vec::len).collect();
    let s_masks: u64 = if exhaustive { 1 << s_bits.iter().sum::<usize>() } else { 1 };
    let mut classes = BTreeSet::new();
    let mut systems = 0;
    let mut obstruction = None;
    for mask in 0..s_masks {
        let mut shift = 0;
        let s: Vec<Chain> = (0..3)
            .map(|k| {
                let c = span_sums(&s0[k], &s_var[k], mask >> shift);
                shift += s_bits[k];
                c
            })
            .collect();
        let triple = |k: usize| {
            let mut c = a.mu_chains(&[x[k], x[k + 1], x[k + 2]]);
            c.add_assign(&a.mu_chains(&[&s[k], x[k + 2]]));
            c.add_assign(&a.mu_chains(&[x[k], &s[k + 1]]));
            c
        };
        let t0: Vec<Chain> = match (0..2).map(|k| solver.solve(&cx, d[k] + d[k + 1] + d[k + 2] + 1, &triple(k), "triple product")).collect() {
            Ok(t) => t,
            Err(e) => {
                obstruction.get_or_insert(e);
                continue;
            }
        };
        let t_bits = t_var[0].len() + t_var[1].len();
        let t_masks: u64 = if exhaustive { 1 << t_bits } else { 1 };
        for tmask in 0..t_masks {
            let t1 = span_sums(&t0[0], &t_var[0], tmask);
            let t2 = span_sums(&t0[1], &t_var[1], tmask >> t_var[0].len());
            let mut rep = a.mu_chains(&[x[0], x[1], x[2], x[3]]);
            rep.add_assign(&a.mu_chains(&[&s[0], x[2], x[3]]));
            rep.add_assign(&a.mu_chains(&[x[0], &s[1], x[3]]));
            rep.add_assign(&a.mu_chains(&[x[0], x[1], &s[2]]));
            rep.add_assign(&a.mu_chains(&[&t1, x[3]]));
            rep.add_assign(&a.mu_chains(&[x[0], &t2]));
            rep.add_assign(&a.mu_chains(&[&s[0], &s[2]]));
            classes.insert(cx.reduce(degree, &rep, &[]));
            systems += 1;
        }
    }
    if systems == 0 {
        return Err(obstruction.unwrap_or(AInfError::Undefined { product: "fourfold".into(), obstruction: "none".into() }));
    }
    Ok(Massey4 { degree, classes, defining_systems: systems, exhaustive })
}

/// ⟨x, a₁, a₂⟩ = [m₃(x,a₁,a₂) + m₂(s₁,a₂) + m₂(x,s₂)] for a right module.
pub fn massey3_module(m: &AInfModule, x: &Chain, a1: &Chain, a2: &Chain, pivoting: Pivoting) -> Result<MasseyCoset, AInfError> {
    if m.side() == Side::Left {
        return Err(AInfError::Kind("massey3_module takes a right module; use the opposite".into()));
    }
    let (mc, ac) = (Complex::of_module(m), Complex::of_algebra(m.algebra()));
    let dx = require_cycle(&mc, x, "x")?;
    let d1 = require_cycle(&ac, a1, "a1")?;
    let d2 = require_cycle(&ac, a2, "a2")?;
    let mut solver = Solver::new(pivoting);
    let s1 = solver.solve(&mc, dx + d1, &m.op_chains(&[], x, &[a1]), "x a1")?;
    let s2 = solver.solve(&ac, d1 + d2, &m.algebra().mu_chains(&[a1, a2]), "a1 a2")?;
    let mut rep = m.op_chains(&[], x, &[a1, a2]);
    rep.add_assign(&m.op_chains(&[], &s1, &[a2]));
    rep.add_assign(&m.op_chains(&[], x, &[&s2]));
    let degree = dx + d1 + d2 + 1;
    let indeterminacy: Vec<Chain> = mc
        .homology_basis(dx + d1 + 1)
        .iter()
        .map(|z| m.op_chains(&[], z, &[a2]))
        .chain(ac.homology_basis(d1 + d2 + 1).iter().map(|z| m.op_chains(&[], x, &[z])))
        .collect();
    let indeterminacy = independent_mod_boundaries(&mc, degree, indeterminacy);
    let canonical = mc.reduce(degree, &rep, &indeterminacy);
    Ok(MasseyCoset { degree, representative: rep, canonical, indeterminacy, witnesses: vec![s1, s2] })
}

/// ⟨r, x, r₁⟩ = [m₂,₂(r,x,r₁) + m₁,₂(s₁,r₁) + m₂,₁(r,s₂)] for a bimodule.
pub fn massey3_bimodule(m: &AInfModule, r: &Chain, x: &Chain, r1: &Chain, pivoting: Pivoting) -> Result<MasseyCoset, AInfError> {
    if m.side() != Side::Bimodule {
        return Err(AInfError::Kind("massey3_bimodule takes a bimodule".into()));
    }
    let (mc, ac) = (Complex::of_module(m), Complex::of_algebra(m.algebra()));
    let dr = require_cycle(&ac, r, "r")?;
    let dx = require_cycle(&mc, x, "x")?;
    let d1 = require_cycle(&ac, r1, "r1")?;
    let mut solver = Solver::new(pivoting);
    let s1 = solver.solve(&mc, dr + dx, &m.op_chains(&[r], x, &[]), "r x")?;
    let s2 = solver.solve(&mc, dx + d1, &m.op_chains(&[], x, &[r1]), "x r1")?;
    let mut rep = m.op_chains(&[r], x, &[r1]);
    rep.add_assign(&m.op_chains(&[], &s1, &[r1]));
    rep.add_assign(&m.op_chains(&[r], &s2, &[]));
    let degree = dr + dx + d1 + 1;
    let indeterminacy: Vec<Chain> = mc
        .homology_basis(dr + dx + 1)
        .iter()
        .map(|z| m.op_chains(&[], z, &[r1]))
        .chain(mc.homology_basis(dx + d1 + 1).iter().map(|z| m.op_chains(&[r], z, &[])))
        .collect();
    let indeterminacy = independent_mod_boundaries(&mc, degree, indeterminacy);
    let canonical = mc.reduce(degree, &rep, &indeterminacy);
    Ok(MasseyCoset { degree, representative: rep, canonical, indeterminacy, witnesses: vec![s1, s2] })
}
