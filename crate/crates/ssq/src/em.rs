use std::collections::BTreeMap;

use ainf::{AInfModule, Chain, Complex, Side};
use boxtensor::{box_tensor, BoxParams, BoxTensorComplex};
use gf2core::{BitMatrix, Echelon, GradedMap, GradedVectorSpace};
use resolve::BigradedTable;
use ring_r::Precision;
use rmodule::GradedModule;
use serde::Serialize;

use crate::{FilteredComplex, Page, SsqError};

/// The spectral sequence of the bar-length filtration on M ⊠ N.
#[derive(Clone, Debug)]
pub struct EmSpectralSequence {
    pub box_complex: BoxTensorComplex,
    pub filtered: FilteredComplex,
    pub pages: Vec<Page>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E2Comparison {
    pub cells_compared: usize,
    /// (cell, E² dimension, Tor dimension).
    pub mismatches: Vec<((i64, i64), usize, usize)>,
}

impl E2Comparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn em_ss(m: &AInfModule, n: &AInfModule, params: BoxParams, r_max: usize) -> Result<EmSpectralSequence, SsqError> {
    let box_complex = box_tensor(m, n, params)?;
    let filtered = FilteredComplex::from_box(&box_complex);
    let pages = filtered.pages(r_max)?;
    Ok(EmSpectralSequence { box_complex, filtered, pages })
}

impl EmSpectralSequence {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.get(r)
    }

    /// Whether E^r at (p, q) is unaffected by dropping bar lengths above n_max
    /// and internal degrees below j_min.
    pub fn exact_cell(&self, r: usize, (p, q): (i64, i64)) -> bool {
        let params = self.box_complex.params;
        p + r as i64 - 1 <= params.n_max as i64 && q >= params.j_min
    }

    /// E² against a Tor table on the cells certified in both.
    pub fn compare_to_tor(&self, table: &BigradedTable) -> E2Comparison {
        let e2 = &self.pages[2];
        let mut out = E2Comparison { cells_compared: 0, mismatches: Vec::new() };
        for i in 0..=table.i_max {
            for j in table.j_lo..=table.j_hi {
                let cell = (i as i64, j);
                if !table.is_certified(i, j) || !self.exact_cell(2, cell) {
                    continue;
                }
                out.cells_compared += 1;
                let (a, b) = (e2.get(cell), table.get(i, j));
                if a != b {
                    out.mismatches.push((cell, a, b));
                }
            }
        }
        out
    }
}

/// H(M) with the R_p-action induced by m₂, for M over the strict ring R_p.
pub fn homology_module(m: &AInfModule) -> Result<GradedModule, SsqError> {
    let a = m.algebra();
    let (Some(v), Some(q)) = (a.basis().find("V^1*Q^0"), a.basis().find("V^0*Q^1")) else {
        return Err(SsqError::Unsupported(format!("{} is not R_p with p >= 2", a.name)));
    };
    let p = Precision::new((a.basis().len() / 3) as u32).map_err(|e| SsqError::Unsupported(e.to_string()))?;
    let cx = Complex::of_module(m);
    let degrees: Vec<i64> = m.basis().occupied_degrees().collect();
    let (lo, hi) = (degrees.iter().min().copied().unwrap_or(0), degrees.iter().max().copied().unwrap_or(0));
    let classes: BTreeMap<i64, Vec<Chain>> = degrees.iter().map(|&d| (d, cx.homology_basis(d))).collect();
    let mut space = GradedVectorSpace::new(lo, hi);
    for (&d, cl) in &classes {
        space.set_dim(d, cl.len()).map_err(rmodule::ModuleError::from)?;
    }
    let act = |z: &Chain, r: usize| match m.side() {
        Side::Left => m.op_chains(&[&Chain::basis(r)], z, &[]),
        _ => m.op_chains(&[], z, &[&Chain::basis(r)]),
    };
    let coords = |d: i64, c: &Chain| {
        let empty = Vec::new();
        let reps = classes.get(&d).unwrap_or(&empty);
        let mut e = Echelon::new(m.basis().in_degree(d).len());
        let bounds = cx.boundaries(d);
        for b in bounds.iter().chain(reps) {
            e.insert(&m.basis().to_vec(d, b));
        }
        let tag = e.express(&m.basis().to_vec(d, c)).expect("image of a cycle is a cycle");
        tag.slice(bounds.len(), reps.len())
    };
    let mut maps = Vec::new();
    for (r, shift) in [(v, -4), (q, -1)] {
        let mut blocks = BTreeMap::new();
        for (&d, cl) in &classes {
            let rows = classes.get(&(d + shift)).map_or(0, Vec::len);
            if cl.is_empty() || rows == 0 {
                continue;
            }
            let cols: Vec<_> = cl.iter().map(|z| coords(d + shift, &act(z, r))).collect();
            blocks.insert(d, BitMatrix::from_columns(rows, &cols).map_err(rmodule::ModuleError::from)?);
        }
        maps.push(GradedMap::new(space.clone(), space.clone(), shift, blocks).map_err(rmodule::ModuleError::from)?);
    }
    let act_q = maps.pop().expect("two maps");
    let act_v = maps.pop().expect("two maps");
    Ok(GradedModule::new(act_v, act_q, p)?)
}
