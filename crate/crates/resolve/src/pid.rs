use std::collections::{BTreeMap, BTreeSet};

use gf2core::{BitMatrix, BitVec};

use ring_r::Monomial;
use rmodule::{tensor_over_f, GradedModule};
use serde::Serialize;

use crate::{certified_lo, tor, Coefficients, ModView, ResolveError, TorMethod, TorParams};

/// Cone of 1⊗U + U⊗1 on M ⊗_F N against Tor over F[[U]], in U-grading (deg U = −2).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PidConeReport {
    pub cone: BTreeMap<i64, usize>,
    pub tor_totals: BTreeMap<i64, usize>,
    /// Comparison starts here.
    pub certified_lo: i64,
    pub mismatches: Vec<(i64, usize, usize)>,
}

impl PidConeReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Modules are read with V as U, so stored degrees are twice the U-degrees.
pub fn tor_pid_cone_check(m: &GradedModule, n: &GradedModule) -> Result<PidConeReport, ResolveError> {
    let q_zero = |x: &GradedModule| x.act_q().stored_blocks().values().all(BitMatrix::is_zero);
    if !q_zero(m) {
        return Err(ResolveError::NonzeroQ("M"));
    }
    if !q_zero(n) {
        return Err(ResolveError::NonzeroQ("N"));
    }
    if let Some(d) = m.degrees().into_iter().chain(n.degrees()).find(|d| d % 2 != 0) {
        return Err(ResolveError::OddDegree(d));
    }
    let (tm, tn) = (m.top().ok_or(ResolveError::Empty)?, n.top().ok_or(ResolveError::Empty)?);
    let cert = certified_lo(m, n);
    let top = tm + tn;

    let t = tensor_over_f(m, n)?;
    let view = ModView::new(&t.module);
    // f = U⊗1 + 1⊗U from degree e to e − 4.
    let f = |e: i64| -> BitMatrix {
        let right = t.right_v.block(e);
        let cols: Vec<BitVec> = (0..t.module.dim(e))
            .map(|i| {
                let mut c = view.act_basis(e, Monomial::V, i);
                c.xor_assign(&right.column(i));
                c
            })
            .collect();
        BitMatrix::from_columns(t.module.dim(e - 4), &cols).expect("columns have the target dimension")
    };
    let mut cone: BTreeMap<i64, usize> = BTreeMap::new();
    let span_lo = cert + 4;
    for c in (span_lo..=top + 2).filter(|c| c % 2 == 0) {
        // coker f in degree c − 2 and ker f in degree c.
        let coker = t.module.dim(c - 2) - f(c + 2).rank();
        let ker = {
            let b = f(c);
            b.cols() - b.rank()
        };
        if coker + ker > 0 {
            cone.insert(c / 2, coker + ker);
        }
    }

    let params = TorParams { i_max: 3, j_lo: cert, j_hi: top, coeffs: Coefficients::VOnly };
    let table = tor(m, n, TorMethod::Resolution, params)?;
    let mut tor_totals: BTreeMap<i64, usize> = BTreeMap::new();
    for (&(i, j), &dim) in &table.entries {
        let c = j + 2 * i as i64 + 2;
        if c >= span_lo {
            *tor_totals.entry(c / 2).or_default() += dim;
        }
    }
    let keys: BTreeSet<i64> = cone.keys().chain(tor_totals.keys()).copied().collect();
    let mismatches = keys
        .into_iter()
        .filter_map(|k| {
            let (a, b) = (cone.get(&k).copied().unwrap_or(0), tor_totals.get(&k).copied().unwrap_or(0));
            (a != b).then_some((k, a, b))
        })
        .collect();
    Ok(PidConeReport { cone, tor_totals, certified_lo: (span_lo + 1).div_euclid(2), mismatches })
}
