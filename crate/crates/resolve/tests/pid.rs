use resolve::{tor_pid_cone_check, ResolveError};
use ring_r::Precision;
use rmodule::{catalogue, GradedModule};

const P: u32 = 8;
const LO: i64 = -40;

/// A U-tower with top in U-degree `top`.
fn tower(top: i64) -> GradedModule {
    GradedModule::towers(&[(2 * top, None)], &[], Precision::new(P).unwrap(), LO).unwrap()
}

fn point(top: i64) -> GradedModule {
    GradedModule::field(Precision::new(P).unwrap(), 2 * top, LO).unwrap()
}

#[test]
fn free_case() {
    let r = tower(0);
    let report = tor_pid_cone_check(&r, &r).unwrap();
    assert!(report.passed(), "{report:?}");
    // F[[U]]⟨1⟩
    assert!(report.cone.iter().all(|(c, d)| *d == 1 && *c <= 1 && (1 - c) % 2 == 0));
    assert_eq!(report.cone.get(&1), Some(&1));
    assert!(report.cone.len() > 3);
}

#[test]
fn field_case() {
    let f = point(0);
    let report = tor_pid_cone_check(&f, &f).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.cone, [(0, 1), (1, 1)].into());
}

#[test]
fn connected_sum_example() {
    let m = tower(1).direct_sum(&point(1)).unwrap();
    let report = tor_pid_cone_check(&m, &m).unwrap();
    assert!(report.passed(), "{report:?}");
    // F[[U]]⟨3⟩ ⊕ F³⟨3⟩ ⊕ F⟨2⟩
    assert_eq!(report.cone.get(&3), Some(&4));
    assert_eq!(report.cone.get(&2), Some(&1));
    for (c, d) in &report.cone {
        if *c < 2 && (3 - c) % 2 == 0 {
            assert_eq!(*d, 1, "degree {c}");
        } else if *c < 2 {
            assert_eq!(*d, 0, "degree {c}");
        }
    }
}

#[test]
fn q_action_is_rejected() {
    let n = catalogue("N", Precision::new(P).unwrap(), LO).unwrap().module;
    assert_eq!(tor_pid_cone_check(&n, &n).unwrap_err(), ResolveError::NonzeroQ("M"));
}
