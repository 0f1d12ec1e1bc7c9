use std::collections::{BTreeMap, HashMap};

use gf2core::{BitMatrix, BitVec, Echelon};
use ring_r::{Monomial, Precision};
use rmodule::GradedModule;

use crate::{Coefficients, ModView, ResolveError};

/// A free module ⊕ R⟨gens[h]⟩, materialized in degrees `>= floor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub gens: Vec<i64>,
    coeffs: Coefficients,
    precision: Precision,
    floor: i64,
    basis: BTreeMap<i64, Vec<(usize, Monomial)>>,
    index: HashMap<(i64, usize), usize>,
}

impl FreeModule {
    pub fn new(gens: Vec<i64>, coeffs: Coefficients, precision: Precision, floor: i64) -> Self {
        let mut basis: BTreeMap<i64, Vec<(usize, Monomial)>> = BTreeMap::new();
        for (h, &g) in gens.iter().enumerate() {
            for m in coeffs.monomials(precision) {
                if g + m.degree() >= floor {
                    basis.entry(g + m.degree()).or_default().push((h, m));
                }
            }
        }
        let index = basis.iter().flat_map(|(d, l)| l.iter().enumerate().map(move |(k, (h, _))| ((*d, *h), k))).collect();
        Self { gens, coeffs, precision, floor, basis, index }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis.get(&d).map_or(0, Vec::len)
    }

    pub fn basis(&self, d: i64) -> &[(usize, Monomial)] {
        self.basis.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn top(&self) -> Option<i64> {
        self.gens.iter().copied().max()
    }

    /// Lowest degree of the untruncated module.
    pub fn bottom(&self) -> Option<i64> {
        let deepest = self.coeffs.monomials(self.precision).map(Monomial::degree).min()?;
        self.gens.iter().map(|g| g + deepest).min()
    }

    pub fn position(&self, d: i64, h: usize) -> Option<usize> {
        self.index.get(&(d, h)).copied()
    }

    /// The element Σ m·e_h of degree `d`.
    pub fn element(&self, d: i64, terms: &[(usize, Monomial)]) -> BitVec {
        let mut v = BitVec::zeros(self.dim(d));
        for &(h, m) in terms {
            assert_eq!(self.gens[h] + m.degree(), d, "term of the wrong degree");
            if m.fits(self.precision) {
                if let Some(k) = self.position(d, h) {
                    v.flip(k);
                }
            }
        }
        v
    }

    /// `m · v` for `v` of degree `d`.
    pub fn mul(&self, d: i64, v: &BitVec, m: Monomial) -> BitVec {
        let target = d + m.degree();
        let mut out = BitVec::zeros(self.dim(target));
        for k in v.ones() {
            let (h, a) = self.basis(d)[k];
            if a.mul(m, self.precision).is_some() {
                if let Some(t) = self.position(target, h) {
                    out.flip(t);
                }
            }
        }
        out
    }
}

/// P⁰ ← P¹ ← … with augmentation ε: P⁰ → N, exact in degrees `>= floor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeResolution {
    pub coeffs: Coefficients,
    pub precision: Precision,
    pub floor: i64,
    pub modules: Vec<FreeModule>,
    /// `diffs[n][g]`: δ of generator g of P^(n+1), an element of P^n.
    pub diffs: Vec<Vec<BitVec>>,
    /// ε of each generator of P⁰.
    pub augmentation: Vec<BitVec>,
    pub target: GradedModule,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn terms(&self) -> Vec<Vec<i64>> {
        self.modules.iter().map(|m| m.gens.clone()).collect()
    }

    /// δ_n: P^n → P^(n−1) in degree `d`, for `n >= 1`.
    pub fn delta_block(&self, n: usize, d: i64) -> BitMatrix {
        let (src, dst) = (&self.modules[n], &self.modules[n - 1]);
        let cols: Vec<BitVec> = src.basis(d).iter().map(|&(g, m)| dst.mul(src.gens[g], &self.diffs[n - 1][g], m)).collect();
        BitMatrix::from_columns(dst.dim(d), &cols).expect("columns have the target dimension")
    }

    /// ε: P⁰ → N in degree `d`.
    pub fn eps_block(&self, d: i64) -> BitMatrix {
        let view = ModView::new(&self.target);
        let p0 = &self.modules[0];
        let cols: Vec<BitVec> = p0.basis(d).iter().map(|&(g, m)| view.act(p0.gens[g], m, &self.augmentation[g])).collect();
        BitMatrix::from_columns(self.target.dim(d), &cols).expect("columns have the target dimension")
    }

    /// δ_n with δ₀ = ε.
    pub fn map_block(&self, n: usize, d: i64) -> BitMatrix {
        if n == 0 {
            self.eps_block(d)
        } else {
            self.delta_block(n, d)
        }
    }

    fn degrees(&self, n: usize) -> impl Iterator<Item = i64> {
        let top = self.modules[n].top().unwrap_or(self.floor - 1);
        self.floor..=top
    }

    /// Verifies δ_{n−1} ∘ δ_n = 0 (with δ₀ = ε) in every stored degree.
    pub fn check_delta_squared(&self) -> Result<(), ResolveError> {
        for n in 1..=self.length() {
            for d in self.degrees(n) {
                if !self.map_block(n - 1, d).mul(&self.delta_block(n, d))?.is_zero() {
                    return Err(ResolveError::NotAComplex { stage: n, degree: d });
                }
            }
        }
        Ok(())
    }

    /// dim ker δ_n per degree (δ₀ = ε).
    pub fn kernel_dims(&self, n: usize) -> BTreeMap<i64, usize> {
        self.degrees(n)
            .map(|d| {
                let b = self.map_block(n, d);
                (d, b.cols() - b.rank())
            })
            .filter(|(_, k)| *k > 0)
            .collect()
    }

    /// Whether im δ_{n+1} = ker δ_n in degree `d`.
    pub fn exact_at(&self, n: usize, d: i64) -> bool {
        let b = self.map_block(n, d);
        let kernel = b.cols() - b.rank();
        let image = if n < self.length() { self.delta_block(n + 1, d).rank() } else { 0 };
        kernel == image
    }

    /// Lowest degree in which stage n and its neighbour agree with the untruncated resolution over R.
    pub fn reliable_lo(&self, n: usize) -> i64 {
        let horizon = |m: &FreeModule| m.top().map_or(i64::MIN, |t| t - 4 * i64::from(self.precision.get()) + 1);
        let mut lo = self.floor.max(horizon(&self.modules[n]));
        if n > 0 {
            lo = lo.max(horizon(&self.modules[n - 1]));
        } else {
            lo = lo.max(self.target.reliable_lo());
        }
        lo
    }
}

/// Minimal generators of the submodule whose degree-d part is spanned by `kernel[d]`.
fn minimal_generators(
    kernel: &BTreeMap<i64, Vec<BitVec>>,
    dim: impl Fn(i64) -> usize,
    act: impl Fn(i64, &BitVec, Monomial) -> BitVec,
    coeffs: Coefficients,
    p: Precision,
) -> Vec<(i64, BitVec)> {
    let mut chosen: Vec<(i64, BitVec)> = Vec::new();
    for (&d, vectors) in kernel.iter().rev() {
        let mut span = Echelon::new(dim(d));
        for (e, g) in &chosen {
            if let Some(m) = coeffs.monomial_of_degree(d - e, p) {
                span.insert(&act(*e, g, m));
            }
        }
        for v in vectors {
            if span.insert(v) {
                chosen.push((d, v.clone()));
            }
        }
    }
    chosen
}

/// Minimal free resolution of `n` over R_p (or F[V]/V^p), up to `length`, in degrees `>= floor`.
pub fn free_resolution(n: &GradedModule, coeffs: Coefficients, length: usize, floor: i64) -> Result<FreeResolution, ResolveError> {
    let p = n.precision();
    let view = ModView::new(n);
    let full: BTreeMap<i64, Vec<BitVec>> =
        n.degrees().into_iter().filter(|&d| d >= floor).map(|d| (d, (0..n.dim(d)).map(|i| BitVec::unit(n.dim(d), i)).collect())).collect();
    let gens0 = minimal_generators(&full, |d| n.dim(d), |d, v, m| view.act(d, m, v), coeffs, p);
    let mut res = FreeResolution {
        coeffs,
        precision: p,
        floor,
        modules: vec![FreeModule::new(gens0.iter().map(|g| g.0).collect(), coeffs, p, floor)],
        diffs: Vec::new(),
        augmentation: gens0.into_iter().map(|g| g.1).collect(),
        target: n.clone(),
    };
    for stage in 1..=length {
        let prev = res.modules[stage - 1].clone();
        let mut kernel = BTreeMap::new();
        for d in res.degrees(stage - 1) {
            let vs = res.map_block(stage - 1, d).kernel_vectors(None);
            if !vs.is_empty() {
                kernel.insert(d, vs);
            }
        }
        if kernel.is_empty() {
            if prev.bottom().is_some_and(|b| b < floor) {
                return Err(ResolveError::WindowExhausted { stage, floor, partial: Box::new(res) });
            }
            break;
        }
        let gens = minimal_generators(&kernel, |d| prev.dim(d), |d, v, m| prev.mul(d, v, m), coeffs, p);
        res.modules.push(FreeModule::new(gens.iter().map(|g| g.0).collect(), coeffs, p, floor));
        res.diffs.push(gens.into_iter().map(|g| g.1).collect());
    }
    Ok(res)
}

/// The explicit two-periodic resolution of M_2311:
/// P_{2k} = R⟨−3k⟩ ⊕ R⟨−3k−2⟩ and P_{2k+1} = R⟨−3k−1⟩ ⊕ R⟨−3k−4⟩.
pub fn periodic_resolution_2311(n_max: usize, p: Precision, floor: i64) -> Result<FreeResolution, ResolveError> {
    let target = rmodule::catalogue("M_2311", p, floor)?.module;
    let gens = |n: usize| -> Vec<i64> {
        let k = (n / 2) as i64;
        if n.is_multiple_of(2) {
            vec![-3 * k, -3 * k - 2]
        } else {
            vec![-3 * k - 1, -3 * k - 4]
        }
    };
    let coeffs = Coefficients::Full;
    let modules: Vec<FreeModule> = (0..=n_max).map(|n| FreeModule::new(gens(n), coeffs, p, floor)).collect();
    let mut diffs = Vec::new();
    for n in 1..=n_max {
        let (src, dst) = (&modules[n], &modules[n - 1]);
        let (q, q2, v) = (Monomial::Q, Monomial::Q2, Monomial::V);
        // δ_{2k}: (1,0) ↦ (Q², 0), (0,1) ↦ (V, Q).  δ_{2k+1}: (1,0) ↦ (Q, 0), (0,1) ↦ (V, Q²).
        let images: [&[(usize, Monomial)]; 2] = if n % 2 == 0 { [&[(0, q2)], &[(0, v), (1, q)]] } else { [&[(0, q)], &[(0, v), (1, q2)]] };
        diffs.push((0..2).map(|g| dst.element(src.gens[g], images[g])).collect());
    }
    // ε: (1,0) ↦ the generator in degree 0, (0,1) ↦ the generator in degree −2.
    let g3 = BitVec::unit(target.dim(0), 0);
    let g1 = BitVec::unit(target.dim(-2), 0);
    Ok(FreeResolution { coeffs, precision: p, floor, modules, diffs, augmentation: vec![g3, g1], target })
}
