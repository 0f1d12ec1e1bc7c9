use serde::Serialize;

use crate::CorrectionTerms;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityLine {
    pub statement: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub lines: Vec<InequalityLine>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.holds)
    }
}

/// The six bounds on (α, β, γ) of a connected sum Y₀ # Y₁ in terms of the summands.
pub fn check_sum_inequalities(t0: CorrectionTerms, t1: CorrectionTerms, sum: CorrectionTerms) -> InequalityReport {
    let lines = vec![
        ("α0 + α1 >= α#", t0.alpha + t1.alpha >= sum.alpha),
        ("α# >= max(α0 + γ1, β0 + β1)", sum.alpha >= (t0.alpha + t1.gamma).max(t0.beta + t1.beta)),
        ("α0 + β1 >= β#", t0.alpha + t1.beta >= sum.beta),
        ("β# >= β0 + γ1", sum.beta >= t0.beta + t1.gamma),
        ("min(α0 + γ1, β0 + β1) >= γ#", (t0.alpha + t1.gamma).min(t0.beta + t1.beta) >= sum.gamma),
        ("γ# >= γ0 + γ1", sum.gamma >= t0.gamma + t1.gamma),
    ];
    InequalityReport { lines: lines.into_iter().map(|(statement, holds)| InequalityLine { statement, holds }).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_pass() {
        let z = CorrectionTerms::new(0, 0, 0);
        assert!(check_sum_inequalities(z, z, z).passed());
    }

    #[test]
    fn violation_is_reported_on_its_line() {
        let y = CorrectionTerms::new(2, 0, 0);
        let report = check_sum_inequalities(y, y, CorrectionTerms::new(5, 0, 0));
        assert!(!report.lines[0].holds);
        assert!(report.lines[1].holds);
    }
}
