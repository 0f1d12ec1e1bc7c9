use std::collections::BTreeMap;

use gf2core::{BitMatrix, GradedMap, GradedVectorSpace};
use num_rational::Ratio;
use ring_r::Precision;
use serde::Serialize;

use crate::{GradedModule, ModuleError};

/// Q sends V^m g_from to V^(m + v_shift) g_to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QLink {
    pub from: usize,
    pub to: usize,
    pub v_shift: u32,
}

/// Manolescu's α, β, γ as stored annotations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorrectionTerms {
    pub alpha: Ratio<i64>,
    pub beta: Ratio<i64>,
    pub gamma: Ratio<i64>,
}

impl CorrectionTerms {
    pub fn new(alpha: i64, beta: i64, gamma: i64) -> Self {
        Self { alpha: alpha.into(), beta: beta.into(), gamma: gamma.into() }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogueEntry {
    pub name: &'static str,
    pub module: GradedModule,
    pub annotations: Option<CorrectionTerms>,
}

pub fn catalogue_names() -> &'static [&'static str] {
    &["trivial_F", "free_R", "M_2311", "N_2311", "HS_hat_Sigma2311", "HSbar_ring"]
}

impl GradedModule {
    /// Sum of towers F[V]/(V^len) with tops `tops[k].0`, cut below `lo`.
    /// A length of `None` means a full tower F[V]/(V^p).
    pub fn towers(tops: &[(i64, Option<u32>)], links: &[QLink], p: Precision, lo: i64) -> Result<Self, ModuleError> {
        let length = |k: usize| tops[k].1.map_or(p.get(), |l| l.min(p.get()));
        let hi = tops.iter().map(|t| t.0).max().unwrap_or(lo).max(lo);
        let mut index: BTreeMap<i64, Vec<(usize, u32)>> = BTreeMap::new();
        for (k, &(top, _)) in tops.iter().enumerate() {
            for m in 0..length(k) {
                let d = top - 4 * i64::from(m);
                if d >= lo {
                    index.entry(d).or_default().push((k, m));
                }
            }
        }
        let mut space = GradedVectorSpace::new(lo, hi);
        for (d, elems) in &index {
            space.set_dim(*d, elems.len())?;
            let labels = elems.iter().map(|(k, m)| format!("V^{m}*g{}", k + 1)).collect();
            space.set_labels(*d, labels)?;
        }
        let position = |d: i64, k: usize, m: u32| index.get(&d).and_then(|e| e.iter().position(|x| *x == (k, m)));

        let mut v_blocks = BTreeMap::new();
        let mut q_blocks = BTreeMap::new();
        for (d, elems) in &index {
            let mut bv = BitMatrix::zeros(space.dim(d - 4), elems.len());
            let mut bq = BitMatrix::zeros(space.dim(d - 1), elems.len());
            for (c, &(k, m)) in elems.iter().enumerate() {
                if let Some(r) = position(d - 4, k, m + 1) {
                    bv.set(r, c, true);
                }
                for link in links.iter().filter(|l| l.from == k) {
                    if tops[link.from].0 - 1 != tops[link.to].0 - 4 * i64::from(link.v_shift) {
                        return Err(ModuleError::Invalid(format!("Q link {link:?} does not have degree -1")));
                    }
                    if let Some(r) = position(d - 1, link.to, m + link.v_shift) {
                        bq.flip(r, c);
                    }
                }
            }
            v_blocks.insert(*d, bv);
            q_blocks.insert(*d, bq);
        }
        let act_v = GradedMap::new(space.clone(), space.clone(), -4, v_blocks)?;
        let act_q = GradedMap::new(space.clone(), space.clone(), -1, q_blocks)?;
        let horizon = tops.iter().filter(|t| t.1.is_none_or(|l| l > p.get())).map(|t| t.0 - 4 * i64::from(p.get()) + 1).max().unwrap_or(lo);
        Ok(GradedModule::new(act_v, act_q, p)?.with_reliable_lo(horizon.max(lo)))
    }

    /// R_p⟨shift⟩ as a module over itself.
    pub fn free(p: Precision, shift: i64, lo: i64) -> Result<Self, ModuleError> {
        Self::towers(
            &[(shift, None), (shift - 1, None), (shift - 2, None)],
            &[QLink { from: 0, to: 1, v_shift: 0 }, QLink { from: 1, to: 2, v_shift: 0 }],
            p,
            lo,
        )
    }

    /// F concentrated in degree `shift`.
    pub fn field(p: Precision, shift: i64, lo: i64) -> Result<Self, ModuleError> {
        Self::towers(&[(shift, Some(1))], &[], p, lo)
    }
}

/// The named modules, truncated to precision `p` and degrees `>= lo`.
pub fn catalogue(name: &str, p: Precision, lo: i64) -> Result<CatalogueEntry, ModuleError> {
    let (name, module, annotations): (&'static str, GradedModule, Option<CorrectionTerms>) = match name {
        "trivial_F" | "F" => ("trivial_F", GradedModule::field(p, 0, lo)?, None),
        "free_R" | "R" => ("free_R", GradedModule::free(p, 0, lo)?, None),
        "HSbar_ring" => ("HSbar_ring", GradedModule::free(p, 0, lo)?, None),
        "M_2311" | "M2311" | "M" => ("M_2311", m_2311(p, lo)?, None),
        "N_2311" | "N2311" | "N" => ("N_2311", n_2311(p, lo)?, None),
        "HS_hat_Sigma2311" | "HS2311" => ("HS_hat_Sigma2311", n_2311(p, lo - 1)?.shift(1)?, Some(CorrectionTerms::new(2, 0, 0))),
        other => return Err(ModuleError::UnknownModule(other.to_string())),
    };
    Ok(CatalogueEntry { name, module, annotations })
}

fn m_2311(p: Precision, lo: i64) -> Result<GradedModule, ModuleError> {
    GradedModule::towers(&[(-2, None), (-3, None), (0, None)], &[QLink { from: 0, to: 1, v_shift: 0 }, QLink { from: 1, to: 2, v_shift: 1 }], p, lo)
}

fn n_2311(p: Precision, lo: i64) -> Result<GradedModule, ModuleError> {
    GradedModule::towers(&[(-4, None), (-1, None), (-2, None)], &[QLink { from: 0, to: 1, v_shift: 1 }, QLink { from: 1, to: 2, v_shift: 0 }], p, lo)
}
