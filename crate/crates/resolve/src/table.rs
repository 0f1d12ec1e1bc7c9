use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Bar,
    Resolution,
    BoxTensor,
    Page(usize),
    Hypothesized(usize),
}

/// Dimensions indexed by (homological degree i, internal degree j).
///
/// Entries with `j >= cert_lo` are certified; lower ones are reported but flagged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BigradedTable {
    pub i_max: usize,
    pub j_lo: i64,
    pub j_hi: i64,
    pub cert_lo: i64,
    pub provenance: Provenance,
    #[serde(with = "entry_list")]
    pub entries: BTreeMap<(usize, i64), usize>,
}

mod entry_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        i: usize,
        j: i64,
        dim: usize,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, i64), usize>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(&(i, j), &dim)| Entry { i, j, dim }).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<(usize, i64), usize>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?.into_iter().map(|e| ((e.i, e.j), e.dim)).collect())
    }
}

impl BigradedTable {
    pub fn new(i_max: usize, j_lo: i64, j_hi: i64, cert_lo: i64, provenance: Provenance) -> Self {
        Self { i_max, j_lo, j_hi, cert_lo, provenance, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, i: usize, j: i64, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), dim);
        }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_certified(&self, i: usize, j: i64) -> bool {
        i <= self.i_max && j >= self.cert_lo.max(self.j_lo) && j <= self.j_hi
    }

    /// Certified nonzero entries.
    pub fn certified_entries(&self) -> BTreeMap<(usize, i64), usize> {
        self.entries.iter().filter(|((i, j), _)| self.is_certified(*i, *j)).map(|(k, v)| (*k, *v)).collect()
    }

    pub fn column_total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((c, _), _)| *c == i).map(|(_, v)| v).sum()
    }

    /// Σ over i + j = t.
    pub fn total_degree(&self, t: i64) -> usize {
        self.entries.iter().filter(|((i, j), _)| *i as i64 + j == t).map(|(_, v)| v).sum()
    }

    /// Re-indexes internal degrees by `k`.
    pub fn shift_internal(&self, k: i64) -> BigradedTable {
        BigradedTable {
            j_lo: self.j_lo + k,
            j_hi: self.j_hi + k,
            cert_lo: self.cert_lo + k,
            entries: self.entries.iter().map(|(&(i, j), &v)| ((i, j + k), v)).collect(),
            ..self.clone()
        }
    }

    /// Entries on which both tables are certified agree.
    pub fn agrees_with(&self, other: &BigradedTable) -> bool {
        self.disagreements(other).is_empty()
    }

    pub fn disagreements(&self, other: &BigradedTable) -> Vec<((usize, i64), usize, usize)> {
        let mut out = Vec::new();
        for i in 0..=self.i_max.min(other.i_max) {
            for j in self.j_lo.max(other.j_lo)..=self.j_hi.min(other.j_hi) {
                if self.is_certified(i, j) && other.is_certified(i, j) && self.get(i, j) != other.get(i, j) {
                    out.push(((i, j), self.get(i, j), other.get(i, j)));
                }
            }
        }
        out
    }

    /// Rows are internal degrees (descending), columns homological degrees (ascending).
    pub fn render_grid(&self) -> String {
        let cell = |v: usize| if v == 0 { "·".to_string() } else { v.to_string() };
        let width = self.entries.values().map(|v| v.to_string().len()).max().unwrap_or(1).max(self.i_max.to_string().len());
        let label = [self.j_lo, self.j_hi].iter().map(|j| j.to_string().len()).max().unwrap_or(1).max(3);
        let mut out = String::new();
        let _ = write!(out, "{:>label$} |", "j\\i");
        for i in 0..=self.i_max {
            let _ = write!(out, " {i:>width$}");
        }
        out.push('\n');
        let _ = writeln!(out, "{}-+{}", "-".repeat(label), "-".repeat((width + 1) * (self.i_max + 1)));
        for j in (self.j_lo..=self.j_hi).rev() {
            let _ = write!(out, "{j:>label$} |");
            for i in 0..=self.i_max {
                let _ = write!(out, " {:>width$}", cell(self.get(i, j)));
            }
            if j < self.cert_lo {
                out.push_str("   (uncertified)");
            }
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut out = String::from("i,j,dim,certified\n");
        for (&(i, j), &v) in &self.entries {
            let _ = writeln!(out, "{i},{j},{v},{}", self.is_certified(i, j));
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let mut t = BigradedTable::new(2, -2, 0, -1, Provenance::Bar);
        t.set(0, 0, 1);
        t.set(1, -1, 2);
        let g = t.render_grid();
        let lines: Vec<&str> = g.lines().collect();
        assert_eq!(lines[2].trim_end(), "  0 | 1 · ·");
        assert_eq!(lines[3].trim_end(), " -1 | · 2 ·");
        assert!(lines[4].ends_with("(uncertified)"));
    }

    #[test]
    fn json_round_trip() {
        let mut t = BigradedTable::new(1, -3, 0, -3, Provenance::Resolution);
        t.set(1, -1, 1);
        let back: BigradedTable = serde_json::from_str(&t.render_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn totals() {
        let mut t = BigradedTable::new(3, -5, 0, -5, Provenance::Bar);
        t.set(0, 0, 1);
        t.set(1, -1, 1);
        t.set(1, -4, 1);
        assert_eq!(t.column_total(1), 2);
        assert_eq!(t.total_degree(0), 2);
        assert_eq!(t.shift_internal(3).get(1, 2), 1);
    }
}
