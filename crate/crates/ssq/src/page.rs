use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use resolve::BigradedTable;
use serde::{Deserialize, Serialize};

use crate::SsqError;

/// The bidegree convention for d_r on pages indexed (filtration p, q = t − p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// d_r: (p, q) → (p − r, q + r − 1).
    Standard,
    /// d_r: (p, q) → (p − r − 1, q + r).
    #[default]
    Shifted,
}

impl Convention {
    pub fn bidegree(self, r: usize) -> (i64, i64) {
        let r = r as i64;
        match self {
            Convention::Standard => (-r, r - 1),
            Convention::Shifted => (-r - 1, r),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Hypothesized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    pub r: usize,
    #[serde(with = "cells")]
    pub entries: BTreeMap<(i64, i64), usize>,
    /// The nonzero parts of d_r.
    pub differentials: Vec<Arrow>,
    pub provenance: Provenance,
    pub convention: Convention,
}

mod cells {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<(i64, i64), usize>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(&(p, q), &dim)| (p, q, dim)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(i64, i64), usize>, D::Error> {
        Ok(Vec::<(i64, i64, usize)>::deserialize(d)?.into_iter().map(|(p, q, dim)| ((p, q), dim)).collect())
    }
}

impl Page {
    /// A Tor table read as an E² page, Tor_{i,j} at (i, j).
    pub fn from_table(table: &BigradedTable, convention: Convention) -> Self {
        let entries = table.entries.iter().filter(|(_, &v)| v > 0).map(|(&(i, j), &v)| ((i as i64, j), v)).collect();
        Page { r: 2, entries, differentials: Vec::new(), provenance: Provenance::Computed, convention }
    }

    pub fn get(&self, cell: (i64, i64)) -> usize {
        self.entries.get(&cell).copied().unwrap_or(0)
    }

    /// Σ_p E_{p, t−p}.
    pub fn total(&self, t: i64) -> usize {
        self.entries.iter().filter(|((p, q), _)| p + q == t).map(|(_, v)| v).sum()
    }

    pub fn totals(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(p, q), &v) in &self.entries {
            *out.entry(p + q).or_default() += v;
        }
        out
    }

    /// Bidegrees realized by the nonzero differentials.
    pub fn measured_bidegrees(&self) -> BTreeSet<(i64, i64)> {
        self.differentials.iter().map(|a| (a.target.0 - a.source.0, a.target.1 - a.source.1)).collect()
    }

    /// Dimensions of H(E^r, d_r).
    pub fn homology(&self) -> BTreeMap<(i64, i64), usize> {
        let mut out = self.entries.clone();
        for a in &self.differentials {
            for cell in [a.source, a.target] {
                let v = out.entry(cell).or_default();
                *v = v.saturating_sub(a.rank);
            }
        }
        out.retain(|_, v| *v > 0);
        out
    }

    /// Rows are q (descending), columns p (ascending).
    pub fn render_grid(&self) -> String {
        let (Some(plo), Some(phi)) = (self.entries.keys().map(|c| c.0).min(), self.entries.keys().map(|c| c.0).max()) else {
            return format!("E^{}: empty\n", self.r);
        };
        let qlo = self.entries.keys().map(|c| c.1).min().unwrap_or(0);
        let qhi = self.entries.keys().map(|c| c.1).max().unwrap_or(0);
        let width = self.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1).max(2);
        let label = [qlo, qhi].iter().map(|j| j.to_string().len()).max().unwrap_or(1).max(3);
        let mut out = format!("E^{} ({:?})\n", self.r, self.provenance);
        let _ = write!(out, "{:>label$} |", "q\\p");
        for p in plo..=phi {
            let _ = write!(out, " {p:>width$}");
        }
        out.push('\n');
        let _ = writeln!(out, "{}-+{}", "-".repeat(label), "-".repeat((width + 1) * (phi - plo + 1) as usize));
        for q in (qlo..=qhi).rev() {
            let _ = write!(out, "{q:>label$} |");
            for p in plo..=phi {
                let v = self.get((p, q));
                let cell = if v == 0 { "·".to_string() } else { v.to_string() };
                let _ = write!(out, " {cell:>width$}");
            }
            out.push('\n');
        }
        for a in &self.differentials {
            let _ = writeln!(out, "({},{}) -{}-> ({},{}): {}", a.source.0, a.source.1, self.r, a.target.0, a.target.1, a.rank);
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("p,q,dim\n");
        for (&(p, q), &v) in &self.entries {
            let _ = writeln!(out, "{p},{q},{v}");
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("page serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternEntry {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub rank: usize,
}

/// Hypothesized ranks of d_r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialPattern {
    pub r: usize,
    #[serde(default)]
    pub convention: Convention,
    #[serde(default)]
    pub entries: Vec<PatternEntry>,
}

impl DifferentialPattern {
    pub fn zero(r: usize, convention: Convention) -> Self {
        Self { r, convention, entries: Vec::new() }
    }
}

/// E^{r+1} from E^r and hypothesized ranks of d_r.
pub fn apply_hypothesized(page: &Page, pattern: &DifferentialPattern) -> Result<Page, SsqError> {
    if pattern.r != page.r {
        return Err(SsqError::WrongPage { pattern: pattern.r, page: page.r });
    }
    let expected = page.convention.bidegree(page.r);
    let mut used: BTreeMap<(i64, i64), usize> = BTreeMap::new();
    for e in &pattern.entries {
        let found = (e.target.0 - e.source.0, e.target.1 - e.source.1);
        if found != expected || pattern.convention != page.convention {
            return Err(SsqError::Bidegree { from: e.source, to: e.target, found, expected });
        }
        *used.entry(e.source).or_default() += e.rank;
        *used.entry(e.target).or_default() += e.rank;
    }
    if let Some((&cell, &u)) = used.iter().find(|(c, &u)| u > page.get(**c)) {
        return Err(SsqError::Infeasible { cell, used: u, available: page.get(cell) });
    }
    let mut entries = page.entries.clone();
    for (cell, u) in used {
        let v = entries.entry(cell).or_default();
        *v -= u;
    }
    entries.retain(|_, v| *v > 0);
    Ok(Page { r: page.r + 1, entries, differentials: Vec::new(), provenance: Provenance::Hypothesized, convention: page.convention })
}

/// A sequence of hypothesized differentials together with the cells no
/// differential may touch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub convention: Convention,
    /// Cells in these columns are protected...
    #[serde(default)]
    pub protected_columns: Vec<i64>,
    /// ...except these.
    #[serde(default)]
    pub unprotected: Vec<(i64, i64)>,
    /// Window of the page the scenario is stated on: p ≤ p_max, q_lo ≤ q ≤ q_hi.
    pub p_max: i64,
    pub q_lo: i64,
    pub q_hi: i64,
    pub steps: Vec<DifferentialPattern>,
    /// Expected E^∞ ranks per total degree.
    #[serde(default)]
    pub target: BTreeMap<i64, usize>,
}

impl Scenario {
    pub fn from_json_str(s: &str) -> Result<Self, SsqError> {
        serde_json::from_str(s).map_err(|e| SsqError::Json(e.to_string()))
    }

    pub fn is_protected(&self, cell: (i64, i64)) -> bool {
        self.protected_columns.contains(&cell.0) && !self.unprotected.contains(&cell)
    }

    pub fn restrict(&self, page: &Page) -> Page {
        let mut p = page.clone();
        p.entries.retain(|&(a, b), _| a <= self.p_max && (self.q_lo..=self.q_hi).contains(&b));
        p.differentials.clear();
        p
    }
}

/// Every page from the restricted start through the last step.
pub fn apply_scenario(start: &Page, scenario: &Scenario) -> Result<Vec<Page>, SsqError> {
    let mut pages = vec![scenario.restrict(start)];
    for step in &scenario.steps {
        for e in &step.entries {
            for cell in [e.source, e.target] {
                if scenario.is_protected(cell) {
                    return Err(SsqError::Protected(cell));
                }
            }
        }
        let next = apply_hypothesized(pages.last().expect("nonempty"), step)?;
        let last = pages.last_mut().expect("nonempty");
        last.differentials = step.entries.iter().filter(|e| e.rank > 0).map(|e| Arrow { source: e.source, target: e.target, rank: e.rank }).collect();
        pages.push(next);
    }
    Ok(pages)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvergenceReport {
    /// (total degree, Σ E^∞, target rank).
    pub rows: Vec<(i64, usize, usize)>,
}

impl ConvergenceReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|(_, a, b)| a == b)
    }
}

/// Σ_p E^∞_{p, t−p} against target ranks in the total degrees `totals`.
pub fn e_infty_vs_target(page: &Page, target: &BTreeMap<i64, usize>, totals: &[i64]) -> ConvergenceReport {
    let rows = totals.iter().map(|&t| (t, page.total(t), target.get(&t).copied().unwrap_or(0))).collect();
    ConvergenceReport { rows }
}

/// The hypothesized d₂ = 0 and d₃ pattern on Tor(ĤS(Y), ĤS(Y)) for Y = Σ(2,3,11).
pub fn shipped_scenario() -> Scenario {
    Scenario::from_json_str(include_str!("../data/two_y_endgame.json")).expect("shipped scenario parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conventions() {
        assert_eq!(Convention::Standard.bidegree(3), (-3, 2));
        assert_eq!(Convention::Shifted.bidegree(3), (-4, 3));
        assert_eq!(Convention::default(), Convention::Shifted);
    }

    #[test]
    fn homology_subtracts_both_ends() {
        let page = Page {
            r: 1,
            entries: BTreeMap::from([((1, 0), 2), ((0, 0), 1)]),
            differentials: vec![Arrow { source: (1, 0), target: (0, 0), rank: 1 }],
            provenance: Provenance::Computed,
            convention: Convention::Standard,
        };
        assert_eq!(page.homology(), BTreeMap::from([((1, 0), 1)]));
        assert_eq!(page.total(1), 2);
    }
}
