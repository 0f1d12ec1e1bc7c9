use std::collections::BTreeMap;
use std::sync::Arc;

use ainf::models::{field_module, ring, strict_module, toy_bimodule, toy_module, truncated_polynomial};
use ainf::{AInfModule, Side};
use boxtensor::{BoxParams, BoxWord};
use resolve::{tor, TorMethod, TorParams};
use ring_r::Precision;
use rmodule::{catalogue, GradedModule};
use ssq::{e_infty_vs_target, em_ss, homology_module, massey_differential_check, module_action_check, MasseyOutcome};

fn prec(n: u32) -> Precision {
    Precision::new(n).unwrap()
}

fn named(name: &str, p: u32) -> GradedModule {
    catalogue(name, prec(p), -30).unwrap().module
}

#[test]
fn field_e2_is_tor_field_field() {
    let a = Arc::new(ring(prec(4)));
    let f = field_module(&a, Side::Right).unwrap();
    let g = field_module(&a, Side::Left).unwrap();
    let params = BoxParams::new(6, -8);
    let em = em_ss(&f, &g, params, 3).unwrap();
    let fm = named("F", 4);
    let table = tor(&fm, &fm, TorMethod::Bar, TorParams::new(5, -8, 0)).unwrap();
    let cmp = em.compare_to_tor(&table);
    assert!(cmp.passed(), "{cmp:?}");
    assert!(cmp.cells_compared > 20);
    let e1 = &em.pages[1];
    let e0 = &em.pages[0];
    assert_eq!(e0.entries, e1.entries);
}

#[test]
fn free_module_collapses_to_column_zero() {
    let a = Arc::new(ring(prec(4)));
    let r = AInfModule::regular(a.clone(), Side::Right);
    let gn = named("N", 4);
    let n = strict_module(&a, &gn, Side::Left, "N").unwrap();
    let params = BoxParams::new(10, -9);
    let em = em_ss(&r, &n, params, 4).unwrap();
    let e2 = &em.pages[2];
    assert!(e2.entries.keys().all(|&(p, q)| p == 0 || !em.exact_cell(2, (p, q))));
    assert_eq!(e2.entries, em.pages[4].entries);
    let target: BTreeMap<i64, usize> = gn.degrees().into_iter().map(|d| (d, gn.dim(d))).collect();
    let totals: Vec<i64> = (params.j_min..=params.exact_through()).collect();
    assert!(e_infty_vs_target(&em.filtered.e_infinity().unwrap(), &target, &totals).passed());
}

#[test]
fn associated_graded_matches_total_homology() {
    let a = Arc::new(ring(prec(3)));
    let m = strict_module(&a, &named("M", 3), Side::Right, "M").unwrap();
    let n = strict_module(&a, &named("N", 3), Side::Left, "N").unwrap();
    let em = em_ss(&m, &n, BoxParams::new(4, -9), 2).unwrap();
    assert_eq!(em.filtered.e_infinity().unwrap().totals(), em.box_complex.homology());
}

#[test]
fn homology_module_of_strict_model_is_the_module() {
    let gm = named("M", 3);
    let a = Arc::new(ring(prec(3)));
    let m = strict_module(&a, &gm, Side::Right, "M").unwrap();
    let h = homology_module(&m).unwrap();
    for d in gm.degrees() {
        assert_eq!(h.dim(d), gm.dim(d));
    }
    assert_eq!(h.action_ranks(-30), gm.action_ranks(-30));
    assert!(h.validate().passed());
}

#[test]
fn d2_matches_triple_products_on_toy_module() {
    let a = Arc::new(truncated_polynomial());
    let m = toy_module(&a).unwrap();
    let f = field_module(&a, Side::Left).unwrap();
    let em = em_ss(&m, &f, BoxParams::new(4, -8), 3).unwrap();
    let (q, q2) = (a.basis().find("Q").unwrap(), a.basis().find("Q^2").unwrap());
    let word = BoxWord { x: 0, slots: vec![q, q2], y: 0 };
    let check = massey_differential_check(&em, &m, &f, &word);
    assert_eq!(check.outcome, MasseyOutcome::Agrees);
    assert_eq!(check.computed, "z[]y");
    assert_eq!(check.formula, "z[]y");
    let long = massey_differential_check(&em, &m, &f, &BoxWord { x: 0, slots: vec![q, q2, q], y: 0 });
    assert_eq!(long.outcome, MasseyOutcome::Agrees);
    assert_eq!(long.computed, "z[Q]y");

    let mut agreed = 0;
    for k in 0..em.box_complex.len() {
        let w = &em.box_complex.words[k];
        if w.slots.len() > 3 {
            continue;
        }
        match massey_differential_check(&em, &m, &f, w).outcome {
            MasseyOutcome::Agrees => agreed += 1,
            MasseyOutcome::Disagrees => panic!("{}", em.box_complex.label(k)),
            MasseyOutcome::NotApplicable(_) => {}
        }
    }
    assert!(agreed >= 10, "{agreed}");
    assert!(em.pages[2].differentials.iter().any(|d| d.source == (2, -3) && d.target == (0, -2)));
}

#[test]
fn strict_words_have_zero_d2() {
    let a = Arc::new(truncated_polynomial());
    let f = field_module(&a, Side::Right).unwrap();
    let g = field_module(&a, Side::Left).unwrap();
    let em = em_ss(&f, &g, BoxParams::new(4, -8), 3).unwrap();
    assert!(em.pages[2].differentials.is_empty());
    let q = a.basis().find("Q").unwrap();
    let q2 = a.basis().find("Q^2").unwrap();
    let c = massey_differential_check(&em, &f, &g, &BoxWord { x: 0, slots: vec![q2, q, q2], y: 0 });
    assert_eq!(c.outcome, MasseyOutcome::Agrees);
    assert_eq!(c.formula, "0");
    let c = massey_differential_check(&em, &f, &g, &BoxWord { x: 0, slots: vec![q, q], y: 0 });
    assert!(matches!(c.outcome, MasseyOutcome::NotApplicable(_)));
}

#[test]
fn bimodule_action_is_a_massey_product() {
    let a = Arc::new(truncated_polynomial());
    let m = toy_bimodule(&a).unwrap();
    let f = field_module(&a, Side::Left).unwrap();
    let q = a.basis().find("Q").unwrap();
    let check = module_action_check(&m, &f, BoxParams::new(3, -6), (q, 0, q, 0)).unwrap();
    assert_eq!(check.outcome, MasseyOutcome::Agrees);
    assert_eq!(check.action, "z[]y");
    assert_eq!(check.massey, "z[]y");
}
