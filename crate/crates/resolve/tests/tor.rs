use std::collections::BTreeMap;

use resolve::{bar_complex, certified_lo, free_resolution, periodic_resolution_2311, tor, Coefficients, ResolveError, TorMethod, TorParams};
use ring_r::Precision;
use rmodule::{catalogue, GradedModule};

const LO: i64 = -40;

fn p(n: u32) -> Precision {
    Precision::new(n).unwrap()
}

fn named(name: &str, prec: u32) -> GradedModule {
    catalogue(name, p(prec), LO).unwrap().module
}

fn ff_expected(i_max: usize) -> BTreeMap<(usize, i64), usize> {
    let mut e = BTreeMap::from([((0, 0), 1)]);
    for i in 1..=i_max {
        let n = (i / 2) as i64;
        let js = if i % 2 == 0 { [-3 * n, -3 * n - 2] } else { [-1 - 3 * n, -4 - 3 * n] };
        for j in js {
            *e.entry((i, j)).or_default() += 1;
        }
    }
    e
}

#[test]
fn tor_f_f_both_methods() {
    let f = named("F", 6);
    let params = TorParams::new(6, -20, 0);
    for method in [TorMethod::Bar, TorMethod::Resolution] {
        let t = tor(&f, &f, method, params).unwrap();
        assert_eq!(t.cert_lo, -23);
        assert_eq!(t.certified_entries(), ff_expected(6), "{method:?}");
        for i in 1..=6 {
            assert_eq!(t.column_total(i), 2);
        }
    }
}

#[test]
fn tor_free_is_column_zero() {
    let r = named("R", 5);
    let n = named("N", 5);
    let t = tor(&r, &n, TorMethod::Resolution, TorParams::new(3, -16, 0)).unwrap();
    for ((i, j), d) in t.certified_entries() {
        assert_eq!(i, 0);
        assert_eq!(d, n.dim(j));
    }
    let b = tor(&r, &n, TorMethod::Bar, TorParams::new(3, -12, 0)).unwrap();
    assert!(b.agrees_with(&t));
}

#[test]
fn bar_agrees_with_resolution() {
    let names = ["F", "R", "M", "N"];
    let mut modules: Vec<GradedModule> = names.iter().map(|n| named(n, 5)).collect();
    modules.push(named("N", 5).shift(1).unwrap());
    for a in &modules {
        for b in &modules {
            let lo = certified_lo(a, b).max(-14);
            let params = TorParams::new(4, lo, 2);
            let x = tor(a, b, TorMethod::Bar, params).unwrap();
            let y = tor(a, b, TorMethod::Resolution, params).unwrap();
            assert!(x.agrees_with(&y), "{:?}", x.disagreements(&y));
        }
    }
}

#[test]
fn symmetric_and_shift_equivariant() {
    let m = named("M", 5);
    let n = named("N", 5);
    let params = TorParams::new(4, -14, 2);
    let mn = tor(&m, &n, TorMethod::Resolution, params).unwrap();
    let nm = tor(&n, &m, TorMethod::Resolution, params).unwrap();
    assert!(mn.agrees_with(&nm));
    let shifted = tor(&m.shift(2).unwrap(), &n.shift(-1).unwrap(), TorMethod::Resolution, TorParams::new(4, -13, 3)).unwrap();
    assert!(shifted.agrees_with(&mn.shift_internal(1)));
    assert_eq!(shifted.cert_lo, mn.cert_lo + 1);
}

#[test]
fn stable_under_precision_increase() {
    let (m5, n5) = (named("M", 5), named("N", 5));
    let (m6, n6) = (named("M", 6), named("N", 6));
    let a = tor(&m5, &n5, TorMethod::Resolution, TorParams::new(5, -18, 0)).unwrap();
    let b = tor(&m6, &n6, TorMethod::Resolution, TorParams::new(5, -22, 0)).unwrap();
    assert!(b.cert_lo <= a.cert_lo - 4);
    for ((i, j), d) in a.certified_entries() {
        assert_eq!(b.get(i, j), d, "({i},{j})");
    }
}

#[test]
fn periodic_resolution_is_exact() {
    let prec = p(6);
    let res = periodic_resolution_2311(6, prec, -24).unwrap();
    res.check_delta_squared().unwrap();
    for n in 0..6 {
        let lo = res.reliable_lo(n + 1);
        for d in lo..=0 {
            assert!(res.exact_at(n, d), "stage {n} degree {d}");
        }
    }
    // ker ε = N and the kernels alternate between shifts of N and M.
    for k in 0..3i64 {
        let even = res.kernel_dims(2 * k as usize);
        let odd = res.kernel_dims(2 * k as usize + 1);
        let n_shift = named("N", 6).shift(-3 * k).unwrap();
        let m_shift = named("M", 6).shift(-3 - 3 * k).unwrap();
        let lo = res.reliable_lo(2 * k as usize + 1);
        for d in lo..=0 {
            assert_eq!(even.get(&d).copied().unwrap_or(0), n_shift.dim(d), "ker δ_{} at {d}", 2 * k);
        }
        let lo = res.reliable_lo(2 * k as usize + 2).max(lo);
        for d in lo..=0 {
            assert_eq!(odd.get(&d).copied().unwrap_or(0), m_shift.dim(d), "ker δ_{} at {d}", 2 * k + 1);
        }
    }
}

#[test]
fn minimal_resolution_matches_periodic_generators() {
    let prec = p(6);
    let m = catalogue("M", prec, -24).unwrap().module;
    let res = free_resolution(&m, Coefficients::Full, 5, -18).unwrap();
    let periodic = periodic_resolution_2311(5, prec, -18).unwrap();
    for (a, b) in res.terms().iter().zip(periodic.terms()) {
        let (mut a, mut b) = (a.clone(), b.clone());
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }
    res.check_delta_squared().unwrap();
}

#[test]
fn resolution_of_free_module_is_trivial() {
    let r = named("R", 4);
    let res = free_resolution(&r, Coefficients::Full, 3, -20).unwrap();
    assert_eq!(res.terms(), vec![vec![0]]);
}

#[test]
fn first_syzygy_of_field_is_n() {
    let f = named("F", 6);
    let res = free_resolution(&f, Coefficients::Full, 2, -24).unwrap();
    assert_eq!(res.terms()[0], vec![0]);
    let mut first = res.terms()[1].clone();
    first.sort();
    assert_eq!(first, vec![-4, -1]);
    let kernel = res.kernel_dims(0);
    let n = named("N", 6);
    for d in res.reliable_lo(1)..=0 {
        assert_eq!(kernel.get(&d).copied().unwrap_or(0), n.dim(d), "degree {d}");
    }
}

#[test]
fn exhaustion_is_reported_with_partial_result() {
    let f = named("F", 2);
    match free_resolution(&f, Coefficients::Full, 40, -6) {
        Err(ResolveError::WindowExhausted { partial, stage, .. }) => {
            assert_eq!(partial.length() + 1, stage);
            partial.check_delta_squared().unwrap();
        }
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn bar_complex_word_counts_for_field() {
    let f = named("F", 4);
    let bar = bar_complex(&f, &f, Coefficients::Full, 3, -10, 0).unwrap();
    let nonunits: Vec<i64> = ring_r::nonunit_monomials(p(4)).map(|m| m.degree()).collect();
    let count = |n: usize, s: i64| -> usize {
        fn go(left: usize, s: i64, d: &[i64]) -> usize {
            if left == 0 {
                return usize::from(s == 0);
            }
            d.iter().map(|x| go(left - 1, s - x, d)).sum()
        }
        go(n, s, &nonunits)
    };
    for (j, slice) in &bar.slices {
        for (n, stage) in slice.stages.iter().enumerate() {
            assert_eq!(stage.len(), count(n, *j));
        }
    }
}

#[test]
fn precision_mismatch_is_rejected() {
    let a = named("F", 3);
    let b = named("F", 4);
    assert!(matches!(tor(&a, &b, TorMethod::Bar, TorParams::new(1, -4, 0)), Err(ResolveError::PrecisionMismatch(3, 4))));
}
