use std::collections::BTreeMap;

use boxtensor::SparseComplex;
use ssq::{
    apply_hypothesized, apply_scenario, e_infty_vs_target, shipped_scenario, Convention, DifferentialPattern, FilteredComplex, Page, PatternEntry, Provenance,
    SsqError,
};

fn cone_example() -> FilteredComplex {
    // y1, y2 at level 0; x', x2' at level 1 with d x' = y1.
    let complex = SparseComplex { degrees: vec![0, 0, 1, 1], d: vec![vec![], vec![], vec![0], vec![]] };
    FilteredComplex::new(complex, vec![0, 0, 1, 1]).unwrap()
}

#[test]
fn trivial_filtration_gives_homology_at_e1() {
    let complex = SparseComplex { degrees: vec![0, 1, 1, 2], d: vec![vec![], vec![0], vec![], vec![2]] };
    let h = complex.homology();
    let fc = FilteredComplex::new(complex, vec![0; 4]).unwrap();
    let pages = fc.pages(4).unwrap();
    assert_eq!(pages[0].entries.values().sum::<usize>(), 4);
    for page in &pages[1..] {
        assert_eq!(page.totals(), h);
        assert!(page.differentials.is_empty());
    }
}

#[test]
fn cone_filtration_recovers_kernel_and_cokernel() {
    let pages = cone_example().pages(3).unwrap();
    assert_eq!(pages[1].entries, BTreeMap::from([((0, 0), 2), ((1, 0), 2)]));
    assert_eq!(pages[1].differentials.len(), 1);
    assert_eq!(pages[1].differentials[0].rank, 1);
    assert_eq!(pages[1].measured_bidegrees().into_iter().collect::<Vec<_>>(), [(-1, 0)]);
    assert_eq!(pages[2].entries, BTreeMap::from([((0, 0), 1), ((1, 0), 1)]));
    assert_eq!(pages[3], Page { r: 3, ..pages[2].clone() });
}

#[test]
fn filtration_violation_is_rejected() {
    let complex = SparseComplex { degrees: vec![0, 1], d: vec![vec![], vec![0]] };
    assert_eq!(FilteredComplex::new(complex, vec![1, 0]).unwrap_err(), SsqError::Filtration(1));
}

#[test]
fn longer_differential_appears_on_later_page() {
    // a (level 2) hits b (level 0) only through a cancelling middle pair.
    let complex = SparseComplex { degrees: vec![0, 1, 0, 1], d: vec![vec![], vec![0, 2], vec![], vec![2]] };
    let fc = FilteredComplex::new(complex, vec![0, 2, 1, 1]).unwrap();
    let pages = fc.pages(3).unwrap();
    assert_eq!(pages[1].entries, BTreeMap::from([((0, 0), 1), ((2, -1), 1)]));
    assert_eq!(pages[2].differentials[0].source, (2, -1));
    assert_eq!(pages[2].differentials[0].target, (0, 0));
    assert!(pages[3].entries.is_empty());
    assert!(fc.e_infinity().unwrap().entries.is_empty());
}

fn two_y_grid() -> Page {
    let cells = [
        ((0, 3), 1),
        ((1, 2), 1),
        ((0, 1), 2),
        ((2, 0), 1),
        ((0, -1), 1),
        ((1, -1), 1),
        ((3, -1), 1),
        ((0, -2), 1),
        ((2, -2), 1),
        ((0, -3), 1),
        ((4, -3), 1),
        ((3, -4), 1),
        ((5, -4), 1),
        ((0, -5), 1),
        ((4, -5), 1),
        ((0, -6), 1),
        ((0, -7), 1),
        ((5, -7), 1),
    ];
    Page { r: 2, entries: cells.into_iter().collect(), differentials: Vec::new(), provenance: Provenance::Computed, convention: Convention::Standard }
}

#[test]
fn zero_pattern_keeps_the_page() {
    let page = two_y_grid();
    let next = apply_hypothesized(&page, &DifferentialPattern::zero(2, Convention::Standard)).unwrap();
    assert_eq!(next.entries, page.entries);
    assert_eq!(next.r, 3);
    assert_eq!(next.provenance, Provenance::Hypothesized);
}

#[test]
fn pattern_errors() {
    let page = two_y_grid();
    let entry = |s, t, rank| PatternEntry { source: s, target: t, rank };
    let too_big = DifferentialPattern { r: 2, convention: Convention::Standard, entries: vec![entry((2, 0), (0, 1), 3)] };
    assert!(matches!(apply_hypothesized(&page, &too_big), Err(SsqError::Infeasible { .. })));
    let wrong = DifferentialPattern { r: 2, convention: Convention::Standard, entries: vec![entry((3, -1), (0, 1), 1)] };
    assert!(matches!(apply_hypothesized(&page, &wrong), Err(SsqError::Bidegree { .. })));
    let shifted = DifferentialPattern { r: 2, convention: Convention::Shifted, entries: vec![entry((3, -1), (0, 1), 1)] };
    assert!(matches!(apply_hypothesized(&page, &shifted), Err(SsqError::Bidegree { .. })));
    assert!(matches!(apply_hypothesized(&page, &DifferentialPattern::zero(3, Convention::Standard)), Err(SsqError::WrongPage { .. })));
}

#[test]
fn shipped_scenario_on_the_grid() {
    let scenario = shipped_scenario();
    let pages = apply_scenario(&two_y_grid(), &scenario).unwrap();
    let last = pages.last().unwrap();
    assert_eq!(last.r, 4);
    let report = e_infty_vs_target(last, &scenario.target, &[3, 2, 1]);
    assert!(report.passed(), "{report:?}");
    assert_eq!(last.get((0, 1)), 1);
    assert_eq!(last.get((2, 0)) + last.get((3, -1)), 1);
    assert_eq!(last.get((0, 3)) + last.get((1, 2)), 2);
    assert_eq!(pages[1].differentials.len(), 3);
    assert!(pages[1].render_grid().contains("(3,-1) -3-> (0,1): 1"));
}

#[test]
fn protected_cells_are_enforced() {
    let mut scenario = shipped_scenario();
    scenario.steps[1].entries.push(PatternEntry { source: (3, -4), target: (0, -2), rank: 1 });
    assert_eq!(apply_scenario(&two_y_grid(), &scenario).unwrap_err(), SsqError::Protected((0, -2)));
}

#[test]
fn page_formats() {
    let page = two_y_grid();
    let json = page.render_json();
    let back: Page = serde_json::from_str(&json).unwrap();
    assert_eq!(back, page);
    assert!(page.render_csv().starts_with("p,q,dim\n"));
    let grid = page.render_grid();
    assert_eq!(grid.lines().count(), 2 + 1 + 11);
}
