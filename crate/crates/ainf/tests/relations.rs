use std::sync::Arc;

use ainf::models::{candidate_ring, field_module, massey_dga, ring, strict_module, toy_bimodule, toy_module, truncated_polynomial};
use ainf::mutate::{mutate_algebra, mutate_module};
use ainf::{
    algebra_relation_at, check_algebra_relations, check_bimodule_relations, check_module_relations, homology_product_associative, module_relation_at,
    AInfAlgebra, AInfModule, Chain, Side,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ring_r::Precision;

fn p(n: u32) -> Precision {
    Precision::new(n).unwrap()
}

/// Every word of length `n` over `size` letters.
fn words(size: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w| (0..size).map(move |x| [w.clone(), vec![x]].concat())).collect();
    }
    out
}

fn brute_force_algebra_passes(a: &AInfAlgebra, n_max: usize) -> bool {
    (1..=n_max).all(|n| words(a.basis().len(), n).iter().all(|w| algebra_relation_at(a, w).is_zero()))
}

#[test]
fn strict_structures_pass() {
    for a in [ring(p(4)), truncated_polynomial(), massey_dga()] {
        let r = check_algebra_relations(&a, 5, None);
        assert!(r.passed(), "{}: {r}", a.name);
        assert!(homology_product_associative(&a, (-8, 0)));
    }
}

#[test]
fn candidate_structure_passes_through_arity_seven() {
    let a = candidate_ring(p(6));
    assert!(!a.is_strict());
    let r = check_algebra_relations(&a, 7, None);
    assert!(r.passed(), "{r}");
    assert!(r.terms > 0);
}

#[test]
fn fourfold_product_alone_fails_at_arity_five() {
    let prec = p(4);
    let mut a = ring(prec);
    let id = |s: &str| a.basis().find(s).unwrap();
    let (q, q2, v) = (id("V^0*Q^1"), id("V^0*Q^2"), id("V^1*Q^0"));
    a.set(&[q2, q, q2, q], Chain::basis(v)).unwrap();
    a.set(&[q, q2, q, q2], Chain::basis(v)).unwrap();
    let r = check_algebra_relations(&a, 5, None);
    let f = r.first_failure.expect("the two-entry structure is not A-infinity");
    assert_eq!(f.arity, 5);
}

#[test]
fn engine_agrees_with_brute_force() {
    let a = truncated_polynomial();
    assert!(brute_force_algebra_passes(&a, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let (m, _) = mutate_algebra(&a, &mut rng).unwrap();
        assert_eq!(check_algebra_relations(&m, 4, None).passed(), brute_force_algebra_passes(&m, 4));
    }
    let dga = massey_dga();
    assert_eq!(check_algebra_relations(&dga, 3, None).passed(), brute_force_algebra_passes(&dga, 3));
}

#[test]
fn mutation_can_leave_a_valid_dga() {
    // sc = 0 is still a DGA: d(sc) = xc = 0.
    let mut a = massey_dga();
    let (s, c) = (a.basis().find("s").unwrap(), a.basis().find("c").unwrap());
    a.set(&[s, c], Chain::zero()).unwrap();
    assert!(check_algebra_relations(&a, 4, None).passed());
}

#[test]
fn mutations_are_located() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in [ring(p(3)), ring(p(5))] {
        for _ in 0..20 {
            let (m, mutation) = mutate_algebra(&a, &mut rng).unwrap();
            let r = check_algebra_relations(&m, 3, None);
            let f = r.first_failure.unwrap_or_else(|| panic!("mutation {mutation:?} of {} not caught", a.name));
            assert!(f.arity <= 3);
            assert!(!algebra_relation_at(&m, &f.inputs).is_zero());
        }
    }
}

#[test]
fn modules_pass_and_mutations_fail() {
    let prec = p(4);
    let r = Arc::new(ring(prec));
    let n = rmodule::catalogue("N", prec, -20).unwrap().module;
    let right = strict_module(&r, &n, Side::Right, "N").unwrap();
    let left = strict_module(&r, &n, Side::Left, "N").unwrap();
    for m in [&right, &left] {
        assert!(check_module_relations(m, 4, None).passed());
    }
    let regular = AInfModule::regular(r.clone(), Side::Right);
    assert!(check_module_relations(&regular, 4, None).passed());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let (m, mutation) = mutate_module(&right, &mut rng).unwrap();
        let rep = check_module_relations(&m, 3, None);
        let f = rep.first_failure.unwrap_or_else(|| panic!("{mutation:?} not caught"));
        assert!(!module_relation_at(&m, &f.inputs, f.module_slot.unwrap()).is_zero());
    }
}

#[test]
fn toy_structures_pass() {
    let a = Arc::new(truncated_polynomial());
    let toy = toy_module(&a).unwrap();
    assert!(check_module_relations(&toy, 6, None).passed());
    let bi = toy_bimodule(&a).unwrap();
    assert!(check_bimodule_relations(&bi, 6, None).passed());
    let f = field_module(&a, Side::Left).unwrap();
    assert!(check_module_relations(&f, 6, None).passed());
}

#[test]
fn opposite_is_an_involution_and_preserves_checks() {
    let a = Arc::new(truncated_polynomial());
    let toy = toy_module(&a).unwrap();
    let op = toy.opposite();
    assert_eq!(op.side(), Side::Left);
    assert_eq!(op.opposite(), toy);
    assert!(check_module_relations(&op, 5, None).passed());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (bad, _) = mutate_module(&toy, &mut rng).unwrap();
    assert_eq!(check_module_relations(&bad, 4, None).passed(), check_module_relations(&bad.opposite(), 4, None).passed());
}

#[test]
fn bimodule_mutation_fails() {
    let prec = p(3);
    let r = Arc::new(ring(prec));
    let mut bi = AInfModule::regular(r.clone(), Side::Right).with_side(Side::Bimodule).unwrap();
    for x in 0..r.basis().len() {
        for y in 0..r.basis().len() {
            bi.set(&[x], y, &[], r.mu(&[x, y])).unwrap();
        }
    }
    assert!(check_bimodule_relations(&bi, 4, None).passed());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (m, _) = mutate_module(&bi, &mut rng).unwrap();
    assert!(!check_bimodule_relations(&m, 3, None).passed());
}

#[test]
fn window_restricts_reports() {
    let a = ring(p(3));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (m, mutation) = mutate_algebra(&a, &mut rng).unwrap();
    let full = check_algebra_relations(&m, 3, None);
    assert!(!full.passed(), "{mutation:?}");
    let empty = check_algebra_relations(&m, 3, Some((100, 200)));
    assert!(empty.passed());
}
