use std::sync::Arc;

use ainf::models::{candidate_ring, massey_dga, ring, toy_bimodule, toy_module, truncated_polynomial};
use ainf::{massey3, massey3_bimodule, massey3_module, massey4, AInfError, AInfModule, Chain, Pivoting, Side};
use ring_r::Precision;

fn c(a: &ainf::AInfAlgebra, label: &str) -> Chain {
    Chain::basis(a.basis().find(label).unwrap())
}

#[test]
fn triple_product_in_the_dga() {
    let a = massey_dga();
    let coset = massey3(&a, [&c(&a, "a"), &c(&a, "b"), &c(&a, "c")], Pivoting::Natural).unwrap();
    assert_eq!(coset.degree, -2);
    assert!(coset.indeterminacy.is_empty());
    assert_eq!(coset.canonical, c(&a, "w"));
    assert!(!coset.is_zero());
}

#[test]
fn triple_product_is_independent_of_pivoting() {
    let a = massey_dga();
    let reference = massey3(&a, [&c(&a, "a"), &c(&a, "b"), &c(&a, "c")], Pivoting::Natural).unwrap();
    for seed in 0..10 {
        let other = massey3(&a, [&c(&a, "a"), &c(&a, "b"), &c(&a, "c")], Pivoting::Shuffled(seed)).unwrap();
        assert_eq!(other.canonical, reference.canonical);
    }
}

#[test]
fn strict_vanishing_products_give_zero() {
    let a = truncated_polynomial();
    let (q, q2) = (c(&a, "Q"), c(&a, "Q^2"));
    let coset = massey3(&a, [&q2, &q2, &q2], Pivoting::Natural).unwrap();
    assert!(coset.is_zero());
    assert!(matches!(massey3(&a, [&q, &q, &q2], Pivoting::Natural), Err(AInfError::Undefined { .. })));
    let four = massey4(&a, [&q2, &q2, &q2, &q2]).unwrap();
    assert_eq!(four.classes.len(), 1);
    assert!(four.classes.iter().all(Chain::is_zero));
}

#[test]
fn fourfold_product_on_the_candidate() {
    let a = candidate_ring(Precision::new(6).unwrap());
    let (q, q2, v) = (c(&a, "V^0*Q^1"), c(&a, "V^0*Q^2"), c(&a, "V^1*Q^0"));
    let four = massey4(&a, [&q2, &q, &q2, &q]).unwrap();
    assert_eq!(four.degree, -4);
    assert!(four.exhaustive);
    assert!(four.contains(&a, &v));
    assert_eq!(four.classes.len(), 1);
    let strict = ring(Precision::new(6).unwrap());
    let zero = massey4(&strict, [&q2, &q, &q2, &q]).unwrap();
    assert!(!zero.contains(&strict, &v));
}

#[test]
fn module_triple_products() {
    let a = Arc::new(truncated_polynomial());
    let toy = toy_module(&a).unwrap();
    let x = Chain::basis(0);
    let coset = massey3_module(&toy, &x, &c(&a, "Q"), &c(&a, "Q^2"), Pivoting::Natural).unwrap();
    assert_eq!(coset.degree, -2);
    assert_eq!(coset.canonical, Chain::basis(1));
    let regular = AInfModule::regular(Arc::new(massey_dga()), Side::Right);
    let dga = regular.algebra().clone();
    let m = massey3_module(&regular, &c(&dga, "a"), &c(&dga, "b"), &c(&dga, "c"), Pivoting::Natural).unwrap();
    let plain = massey3(&dga, [&c(&dga, "a"), &c(&dga, "b"), &c(&dga, "c")], Pivoting::Natural).unwrap();
    assert_eq!(m.canonical, plain.canonical);
}

#[test]
fn bimodule_triple_product() {
    let a = Arc::new(truncated_polynomial());
    let bi = toy_bimodule(&a).unwrap();
    let q = c(&a, "Q");
    let coset = massey3_bimodule(&bi, &q, &Chain::basis(0), &q, Pivoting::Natural).unwrap();
    assert_eq!(coset.canonical, Chain::basis(1));
}

#[test]
fn non_cycles_are_rejected() {
    let a = massey_dga();
    assert!(matches!(massey3(&a, [&c(&a, "s"), &c(&a, "b"), &c(&a, "c")], Pivoting::Natural), Err(AInfError::NotACycle(_))));
}
