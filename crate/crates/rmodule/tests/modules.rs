use std::collections::BTreeMap;

use gf2core::{BitMatrix, GradedMap, GradedVectorSpace};
use ring_r::{Monomial, Precision};
use rmodule::{catalogue, catalogue_names, tensor_over_f, tensor_over_r, GradedModule, ModuleJson, QLink, ValidationFailure};

fn p(n: u32) -> Precision {
    Precision::new(n).unwrap()
}

fn entry(name: &str, n: u32, lo: i64) -> GradedModule {
    catalogue(name, p(n), lo).unwrap().module
}

fn dims_from(m: &GradedModule, from: i64) -> BTreeMap<i64, usize> {
    m.space().dims().iter().filter(|(d, _)| **d >= from).map(|(d, n)| (*d, *n)).collect()
}

#[test]
fn validate_examples() {
    assert!(GradedModule::free(p(4), 0, -20).unwrap().validate().passed());
    assert!(GradedModule::field(p(4), 0, -20).unwrap().validate().passed());
    let f = entry("trivial_F", 3, -10);
    assert!(f.act_v().is_zero() && f.act_q().is_zero());
}

#[test]
fn validate_catches_q_cubed() {
    // F[Q]/(Q^4) in degrees 0..-3: a 4-dimensional module where Q^3 != 0.
    let space = GradedVectorSpace::with_dims(-3, 0, (-3..=0).map(|d| (d, 1))).unwrap();
    let blocks = (-2..=0).map(|d| (d, BitMatrix::identity(1))).collect();
    let q = GradedMap::new(space.clone(), space.clone(), -1, blocks).unwrap();
    let v = GradedMap::zero(space.clone(), space, -4);
    let m = GradedModule::new(v, q, p(2)).unwrap();
    let report = m.validate();
    assert_eq!(report.failures, vec![ValidationFailure::QCubed { degree: 0 }]);
}

#[test]
fn catalogue_validates_at_every_precision() {
    for n in 2..=8 {
        for name in catalogue_names() {
            let m = entry(name, n, -40);
            assert!(m.validate().passed(), "{name} at p = {n}");
        }
    }
}

#[test]
fn shifts() {
    let f = entry("F", 2, -8);
    let g = f.shift(-1).unwrap();
    assert_eq!(g.space().dims(), &BTreeMap::from([(-1, 1)]));
    let m = entry("M_2311", 4, -20);
    assert_eq!(m.shift(3).unwrap().shift(-5).unwrap(), m.shift(-2).unwrap());
    assert_eq!(m.shift(2).unwrap().shift(-2).unwrap(), m);
}

#[test]
fn shifted_n_has_towers_at_minus3_0_minus1() {
    let n1 = entry("N_2311", 5, -30).shift(1).unwrap();
    let tops: Vec<i64> = n1.degrees().into_iter().filter(|&d| n1.act_v().block(d + 4).rank() == 0 || n1.dim(d + 4) == 0).collect();
    assert_eq!(tops.iter().rev().take(3).copied().collect::<Vec<_>>(), vec![0, -1, -3]);
    assert_eq!(entry("HS_hat_Sigma2311", 5, -29), n1);
    assert_eq!(catalogue("HS2311", p(5), -29).unwrap().annotations.unwrap().alpha, 2.into());
}

#[test]
fn m2311_q_from_second_tower_lands_in_third_at_v_power_one() {
    let m = entry("M_2311", 4, -20);
    // Degree -3 holds g2 only; degree -4 holds V*g3 only.
    assert_eq!(m.space().labels(-3).unwrap(), ["V^0*g2"]);
    assert_eq!(m.space().labels(-4).unwrap(), ["V^1*g3"]);
    assert_eq!(m.act_q().block(-3), BitMatrix::identity(1));
    // Q is injective on the span of towers 1 and 2 but g3 (degree 0) is not in its image.
    assert_eq!(m.dim(1), 0);
    let q_into_top = m.act_q().block(1);
    assert_eq!(q_into_top.rank(), 0);
    for d in [-2, -3, -6, -7] {
        assert_eq!(m.act_q().block(d).rank(), 1, "Q injective on degree {d}");
    }
}

#[test]
fn tensor_over_f_dims() {
    let a = GradedModule::field(p(3), 2, -10).unwrap();
    let b = GradedModule::field(p(3), -5, -10).unwrap();
    assert_eq!(tensor_over_f(&a, &b).unwrap().module.space().dims(), &BTreeMap::from([(-3, 1)]));
    let r = entry("R", 3, -20);
    let f = entry("F", 3, -20);
    assert_eq!(tensor_over_f(&r, &f).unwrap().module.space().dims(), r.space().dims());
    // Convolution of dimension sequences.
    let n = entry("N", 3, -20);
    let t = tensor_over_f(&n, &n).unwrap();
    for d in -12..=-2 {
        let conv: usize = n.degrees().iter().map(|&a| n.dim(a) * n.dim(d - a)).sum();
        assert_eq!(t.module.dim(d), conv, "degree {d}");
    }
}

#[test]
fn tensor_over_r_unit_law() {
    for name in catalogue_names() {
        let m = entry(name, 5, -24);
        let r = entry("R", 5, -24);
        let t = tensor_over_r(&r, &m).unwrap();
        let from = t.reliable_lo();
        assert!(from <= m.top().unwrap() - 6, "{name}: reliable window too small");
        assert_eq!(dims_from(&t, from), dims_from(&m, from), "{name}");
        assert_eq!(t.action_ranks(from), m.action_ranks(from), "{name}");
    }
}

#[test]
fn tensor_over_r_trivial_and_symmetric() {
    let f = entry("F", 3, -10);
    assert_eq!(tensor_over_r(&f, &f).unwrap().space().dims(), &BTreeMap::from([(0, 1)]));
    let m = entry("M", 5, -24);
    let n = entry("N", 5, -24);
    let (mn, nm) = (tensor_over_r(&m, &n).unwrap(), tensor_over_r(&n, &m).unwrap());
    assert_eq!(mn.space().dims(), nm.space().dims());
    assert_eq!(mn.action_ranks(mn.reliable_lo()), nm.action_ranks(nm.reliable_lo()));
}

#[test]
fn n_tensor_n_matches_bar_oracle() {
    // Column 0 of Tor(N<1>, N<1>) from an independent bar-complex computation, shifted back by 2.
    let n = entry("N", 8, -30);
    let t = tensor_over_r(&n, &n).unwrap();
    let expected = BTreeMap::from([(-2, 1), (-3, 1), (-5, 2), (-6, 1), (-8, 1), (-9, 1), (-10, 1)]);
    assert_eq!(dims_from(&t, -10), expected);
}

#[test]
fn m_tensor_m_shift_three_is_the_towers_with_two_singletons() {
    let pr = p(8);
    let m = entry("M", 8, -40);
    let t = tensor_over_r(&m, &m).unwrap().shift(3).unwrap();
    let expected = GradedModule::towers(
        &[(-1, None), (-2, None), (1, None), (3, Some(1)), (1, Some(1))],
        &[QLink { from: 0, to: 1, v_shift: 0 }, QLink { from: 1, to: 2, v_shift: 1 }],
        pr,
        -40,
    )
    .unwrap();
    let from = t.reliable_lo().max(expected.reliable_lo());
    assert!(from < -12);
    assert_eq!(dims_from(&t, from), dims_from(&expected, from));
    assert_eq!(t.action_ranks(from), expected.action_ranks(from));
    // Q is an isomorphism from the first tower to the second.
    assert_eq!(t.act_q().block(-1).rank(), 1);
    assert_eq!(t.act(Monomial::Q2, -1, &gf2core::BitVec::unit(t.dim(-1), 0)).count_ones(), 1);
}

#[test]
fn json_round_trip() {
    let m = entry("M_2311", 3, -12);
    let j = serde_json::to_string(&m.to_json()).unwrap();
    let back: ModuleJson = serde_json::from_str(&j).unwrap();
    assert_eq!(GradedModule::from_json(&back).unwrap(), m);
}

#[test]
fn direct_sum_dims_add() {
    let (m, n) = (entry("M", 3, -12), entry("N", 3, -12));
    let s = m.direct_sum(&n).unwrap();
    assert!(s.validate().passed());
    for d in -12..=0 {
        assert_eq!(s.dim(d), m.dim(d) + n.dim(d));
    }
}

#[test]
fn unknown_name_is_an_error() {
    assert!(catalogue("nope", p(2), -4).is_err());
}
