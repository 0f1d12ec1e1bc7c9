//! Concrete structures: R_p strict and with its higher product, small DGAs, and toy modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use ring_r::{Monomial, Precision};
use rmodule::GradedModule;

use crate::{AInfAlgebra, AInfError, AInfModule, Chain, GradedBasis, Side};

/// R_p with μ₂ the product and nothing else; basis id of V^a Q^e is 3a + e.
pub fn ring(p: Precision) -> AInfAlgebra {
    let mut basis = GradedBasis::new();
    for m in ring_r::monomials(p) {
        basis.push(m.degree(), m.to_string());
    }
    let mut a = AInfAlgebra::new(format!("R_{}", p.get()), basis);
    for x in ring_r::monomials(p) {
        for y in ring_r::monomials(p) {
            if let Some(z) = x.mul(y, p) {
                a.set(&[x.index(), y.index()], Chain::basis(z.index())).expect("product is graded");
            }
        }
    }
    a.set_unit(Monomial::ONE.index()).expect("1 has degree 0");
    a
}

/// R_p with μ₄(V^a Q^e₁, V^b Q^e₂, V^c Q^e₃, V^d Q^e₄) = V^(a+b+c+d+1) Q^(Σe − 6)
/// whenever e₁ + e₂ ≥ 3 and e₃ + e₄ ≥ 3.
pub fn candidate_ring(p: Precision) -> AInfAlgebra {
    let mut a = ring(p);
    a.name = format!("R_{} candidate", p.get());
    let nonunits: Vec<Monomial> = ring_r::nonunit_monomials(p).filter(|m| m.q > 0).collect();
    for &x1 in &nonunits {
        for &x2 in &nonunits {
            if x1.q + x2.q < 3 {
                continue;
            }
            for &x3 in &nonunits {
                for &x4 in &nonunits {
                    if x3.q + x4.q < 3 {
                        continue;
                    }
                    let v = x1.v + x2.v + x3.v + x4.v + 1;
                    let q = x1.q + x2.q + x3.q + x4.q - 6;
                    let out = Monomial::new(v, q).expect("q < 3");
                    if out.fits(p) {
                        a.set(&[x1.index(), x2.index(), x3.index(), x4.index()], Chain::basis(out.index())).expect("degree Σ + 2");
                    }
                }
            }
        }
    }
    a
}

/// F[Q]/(Q³), deg Q = −1, strict.
pub fn truncated_polynomial() -> AInfAlgebra {
    let basis = GradedBasis::from_parts(vec![0, -1, -2], vec!["1".into(), "Q".into(), "Q^2".into()]);
    let mut a = AInfAlgebra::new("F[Q]/Q^3", basis);
    a.set(&[1, 1], Chain::basis(2)).expect("graded");
    a.set_unit(0).expect("unit");
    a
}

/// Basis 1, a, b, c, s, t (degree −1) and x = ab, y = bc, w = sc (degree −2),
/// with ds = x, dt = y and no other products.
pub fn massey_dga() -> AInfAlgebra {
    let labels = ["1", "a", "b", "c", "s", "t", "x", "y", "w"];
    let degrees = vec![0, -1, -1, -1, -1, -1, -2, -2, -2];
    let basis = GradedBasis::from_parts(degrees, labels.iter().map(|s| s.to_string()).collect());
    let mut a = AInfAlgebra::new("massey DGA", basis);
    let id = |l: &str| labels.iter().position(|x| *x == l).unwrap();
    a.set(&[id("s")], Chain::basis(id("x"))).unwrap();
    a.set(&[id("t")], Chain::basis(id("y"))).unwrap();
    a.set(&[id("a"), id("b")], Chain::basis(id("x"))).unwrap();
    a.set(&[id("b"), id("c")], Chain::basis(id("y"))).unwrap();
    a.set(&[id("s"), id("c")], Chain::basis(id("w"))).unwrap();
    a.set_unit(id("1")).unwrap();
    a
}

/// Basis ids of a graded module: degrees descending, then index.
pub fn graded_ids(gm: &GradedModule) -> BTreeMap<(i64, usize), usize> {
    let mut degrees = gm.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    degrees.into_iter().flat_map(|d| (0..gm.dim(d)).map(move |i| (d, i))).enumerate().map(|(id, k)| (k, id)).collect()
}

/// A graded R_p-module as a strict module (m₁ = 0, m₂ = action) over `ring(p)`.
pub fn strict_module(algebra: &Arc<AInfAlgebra>, gm: &GradedModule, side: Side, name: &str) -> Result<AInfModule, AInfError> {
    let p = gm.precision();
    if algebra.basis().len() != 3 * p.get() as usize {
        return Err(AInfError::Kind("algebra is not R_p at the module's precision".into()));
    }
    let ids = graded_ids(gm);
    let mut order: Vec<((i64, usize), usize)> = ids.iter().map(|(k, v)| (*k, *v)).collect();
    order.sort_by_key(|(_, id)| *id);
    let mut basis = GradedBasis::new();
    for ((d, i), _) in &order {
        let label = gm.space().labels(*d).and_then(|l| l.get(*i).cloned()).unwrap_or_else(|| format!("e{d}.{i}"));
        basis.push(*d, label);
    }
    let table = rmodule::ActionTable::new(gm);
    let mut m = AInfModule::new(name, side, basis, algebra.clone());
    for &((d, i), id) in &order {
        for mono in ring_r::nonunit_monomials(p) {
            let target = d + mono.degree();
            let image = table.apply(d, mono, &gf2core::BitVec::unit(gm.dim(d), i), gm.dim(target));
            let out: Chain = image.ones().map(|k| ids[&(target, k)]).collect();
            if side != Side::Left {
                m.set(&[], id, &[mono.index()], out.clone())?;
            }
            if side != Side::Right {
                m.set(&[mono.index()], id, &[], out)?;
            }
        }
    }
    m.set_unit_action()?;
    Ok(m)
}

/// F concentrated in degree 0 over a unital augmented algebra.
pub fn field_module(algebra: &Arc<AInfAlgebra>, side: Side) -> Result<AInfModule, AInfError> {
    let mut m = AInfModule::new("F", side, GradedBasis::from_parts(vec![0], vec!["y".into()]), algebra.clone());
    m.set_unit_action()?;
    Ok(m)
}

/// Right module over F[Q]/Q³ with basis x (degree 0), z (degree −2), trivial m₂ and
/// m₃(x, Q, Q²) = m₃(x, Q², Q) = z.
pub fn toy_module(algebra: &Arc<AInfAlgebra>) -> Result<AInfModule, AInfError> {
    let basis = GradedBasis::from_parts(vec![0, -2], vec!["x".into(), "z".into()]);
    let mut m = AInfModule::new("toy", Side::Right, basis, algebra.clone());
    let (q, q2) = (id_of(algebra, "Q")?, id_of(algebra, "Q^2")?);
    m.set_right(0, &[q, q2], Chain::basis(1))?;
    m.set_right(0, &[q2, q], Chain::basis(1))?;
    m.set_unit_action()?;
    Ok(m)
}

/// Bimodule over F[Q]/Q³ with basis x (degree 0), z (degree −1), trivial one-sided
/// actions and m₂,₂(Q, x, Q) = z.
pub fn toy_bimodule(algebra: &Arc<AInfAlgebra>) -> Result<AInfModule, AInfError> {
    let basis = GradedBasis::from_parts(vec![0, -1], vec!["x".into(), "z".into()]);
    let mut m = AInfModule::new("toy bimodule", Side::Bimodule, basis, algebra.clone());
    let q = id_of(algebra, "Q")?;
    m.set(&[q], 0, &[q], Chain::basis(1))?;
    m.set_unit_action()?;
    Ok(m)
}

fn id_of(a: &AInfAlgebra, label: &str) -> Result<usize, AInfError> {
    a.basis().find(label).ok_or_else(|| AInfError::UnknownLabel(label.to_string()))
}
