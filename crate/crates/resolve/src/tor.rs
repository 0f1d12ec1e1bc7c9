use gf2core::{BitMatrix, BitVec};
use rmodule::GradedModule;
use serde::{Deserialize, Serialize};

use crate::{bar_complex, free_resolution, BigradedTable, Coefficients, FreeResolution, ModView, Provenance, ResolveError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorMethod {
    Bar,
    Resolution,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorParams {
    pub i_max: usize,
    pub j_lo: i64,
    pub j_hi: i64,
    #[serde(default)]
    pub coeffs: Coefficients,
}

impl TorParams {
    pub fn new(i_max: usize, j_lo: i64, j_hi: i64) -> Self {
        Self { i_max, j_lo, j_hi, coeffs: Coefficients::Full }
    }
}

/// Lowest internal degree in which the computation over R_p agrees with the one over R.
pub fn certified_lo(m: &GradedModule, n: &GradedModule) -> i64 {
    let (Some(tm), Some(tn)) = (m.top(), n.top()) else {
        return i64::MAX;
    };
    let p = i64::from(m.precision().get());
    (tm + tn - 4 * p + 1).max(m.reliable_lo() + tn).max(n.reliable_lo() + tm)
}

pub fn tor(m: &GradedModule, n: &GradedModule, method: TorMethod, params: TorParams) -> Result<BigradedTable, ResolveError> {
    if m.precision() != n.precision() {
        return Err(ResolveError::PrecisionMismatch(m.precision().get(), n.precision().get()));
    }
    match method {
        TorMethod::Bar => tor_bar(m, n, params),
        TorMethod::Resolution => {
            let floor = params.j_lo - n.top().ok_or(ResolveError::Empty)?;
            let res = match free_resolution(m, params.coeffs, params.i_max + 1, floor) {
                Ok(r) => r,
                Err(ResolveError::WindowExhausted { partial, .. }) => *partial,
                Err(e) => return Err(e),
            };
            tor_with(&res, n, params)
        }
    }
}

fn tor_bar(m: &GradedModule, n: &GradedModule, params: TorParams) -> Result<BigradedTable, ResolveError> {
    let bar = bar_complex(m, n, params.coeffs, params.i_max + 1, params.j_lo, params.j_hi)?;
    let mut table = BigradedTable::new(params.i_max, params.j_lo, params.j_hi, certified_lo(m, n), Provenance::Bar);
    for (&j, slice) in &bar.slices {
        for i in 0..=params.i_max {
            table.set(i, j, slice.homology(i));
        }
    }
    Ok(table)
}

/// H(P ⊗_R N) from a given resolution P of the first module.
pub fn tor_with(res: &FreeResolution, n: &GradedModule, params: TorParams) -> Result<BigradedTable, ResolveError> {
    let view = ModView::new(n);
    let cert = certified_lo(&res.target, n);
    let mut table = BigradedTable::new(params.i_max, params.j_lo, params.j_hi, cert, Provenance::Resolution);
    let stages = (params.i_max + 1).min(res.length());
    for j in params.j_lo..=params.j_hi {
        let basis: Vec<Vec<(usize, usize)>> = (0..=stages)
            .map(|s| {
                let gens = &res.modules[s].gens;
                gens.iter().enumerate().flat_map(|(g, &e)| (0..n.dim(j - e)).map(move |y| (g, y))).collect()
            })
            .collect();
        let diffs: Vec<BitMatrix> = (1..=stages)
            .map(|s| {
                let (src, dst) = (&res.modules[s], &res.modules[s - 1]);
                let mut offsets = Vec::with_capacity(dst.rank());
                let mut total = 0;
                for &e in &dst.gens {
                    offsets.push(total);
                    total += n.dim(j - e);
                }
                let cols: Vec<BitVec> = basis[s]
                    .iter()
                    .map(|&(g, y)| {
                        let e = src.gens[g];
                        let mut col = BitVec::zeros(total);
                        for k in res.diffs[s - 1][g].ones() {
                            let (h, mono) = dst.basis(e)[k];
                            let dy = view.act_basis(j - e, mono, y);
                            for t in dy.ones() {
                                col.flip(offsets[h] + t);
                            }
                        }
                        col
                    })
                    .collect();
                BitMatrix::from_columns(total, &cols).expect("columns have the target dimension")
            })
            .collect();
        for i in 0..=params.i_max.min(stages) {
            let dim = basis[i].len();
            let out = if i == 0 { 0 } else { diffs[i - 1].rank() };
            let inc = diffs.get(i).map_or(0, BitMatrix::rank);
            table.set(i, j, dim - out - inc);
        }
    }
    Ok(table)
}
