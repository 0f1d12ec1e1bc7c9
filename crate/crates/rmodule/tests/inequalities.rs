use rmodule::{check_sum_inequalities, CorrectionTerms};

#[test]
fn two_copies_of_sigma_2311() {
    let y = CorrectionTerms::new(2, 0, 0);
    let report = check_sum_inequalities(y, y, CorrectionTerms::new(2, 2, 0));
    assert_eq!(report.lines.len(), 6);
    assert!(report.passed(), "{report:?}");
}

#[test]
fn three_copies_of_sigma_2311() {
    let report = check_sum_inequalities(CorrectionTerms::new(2, 2, 0), CorrectionTerms::new(2, 0, 0), CorrectionTerms::new(4, 2, 2));
    assert!(report.passed(), "{report:?}");
}
