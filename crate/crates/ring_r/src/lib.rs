//! The coefficient ring R = F[[V]][Q]/(Q³) with deg V = −4 and deg Q = −1,
//! truncated at V^p = 0.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use gf2core::BitVec;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("precision must be at least 1")]
    ZeroPrecision,
    #[error("precision mismatch: {0} vs {1}")]
    PrecisionMismatch(u32, u32),
    #[error("the augmentation ideal has no elements in degree 0")]
    DegreeZero,
    #[error("cannot parse monomial {0:?}")]
    BadMonomial(String),
    #[error("monomial {0} vanishes at precision {1}")]
    BeyondPrecision(Monomial, u32),
}

/// V-adic truncation: V^p ≡ 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Precision(u32);

impl Precision {
    pub fn new(p: u32) -> Result<Self, RingError> {
        if p == 0 {
            Err(RingError::ZeroPrecision)
        } else {
            Ok(Self(p))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Dimension of R_p over F.
    pub fn ring_dim(self) -> usize {
        3 * self.0 as usize
    }
}

impl TryFrom<u32> for Precision {
    type Error = RingError;

    fn try_from(p: u32) -> Result<Self, RingError> {
        Precision::new(p)
    }
}

impl From<Precision> for u32 {
    fn from(p: Precision) -> u32 {
        p.0
    }
}

/// The monomial V^v Q^q with q ≤ 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub v: u32,
    pub q: u8,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { v: 0, q: 0 };
    pub const Q: Monomial = Monomial { v: 0, q: 1 };
    pub const Q2: Monomial = Monomial { v: 0, q: 2 };
    pub const V: Monomial = Monomial { v: 1, q: 0 };

    pub fn new(v: u32, q: u8) -> Option<Self> {
        (q <= 2).then_some(Self { v, q })
    }

    pub fn degree(self) -> i64 {
        -4 * i64::from(self.v) - i64::from(self.q)
    }

    pub fn is_unit(self) -> bool {
        self == Self::ONE
    }

    /// The unique monomial of degree `d`, if any (ignoring precision).
    pub fn of_degree(d: i64) -> Option<Self> {
        if d > 0 {
            return None;
        }
        let (v, q) = ((-d) / 4, (-d) % 4);
        (q <= 2).then_some(Self { v: v as u32, q: q as u8 })
    }

    pub fn mul(self, other: Monomial, p: Precision) -> Option<Monomial> {
        let (v, q) = (self.v + other.v, self.q + other.q);
        (q <= 2 && v < p.0).then_some(Monomial { v, q })
    }

    pub fn fits(self, p: Precision) -> bool {
        self.v < p.0
    }

    /// Position in the standard basis 1, Q, Q², V, VQ, … of R_p.
    pub fn index(self) -> usize {
        3 * self.v as usize + self.q as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self { v: (i / 3) as u32, q: (i % 3) as u8 }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V^{}*Q^{}", self.v, self.q)
    }
}

impl FromStr for Monomial {
    type Err = RingError;

    /// Accepts the canonical `V^i*Q^j` as well as short forms such as `1`, `Q2`, `VQ`, `V^3Q^2`.
    fn from_str(s: &str) -> Result<Self, RingError> {
        let bad = || RingError::BadMonomial(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if t == "1" {
            return Ok(Self::ONE);
        }
        let mut v = 0u32;
        let mut q = 0u32;
        let mut rest = t.as_str();
        while let Some(c) = rest.chars().next() {
            rest = &rest[1..];
            let digits: String = rest.trim_start_matches('^').chars().take_while(char::is_ascii_digit).collect();
            let skip = rest.len() - rest.trim_start_matches('^').len() + digits.len();
            rest = &rest[skip..];
            let e: u32 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            match c {
                'V' => v += e,
                'Q' => q += e,
                _ => return Err(bad()),
            }
        }
        if t.is_empty() || q > 2 {
            return Err(bad());
        }
        Ok(Self { v, q: q as u8 })
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An element Σ c[i][j] V^i Q^j of R_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    coeffs: BitVec,
    precision: Precision,
}

impl RingElement {
    pub fn zero(p: Precision) -> Self {
        Self { coeffs: BitVec::zeros(p.ring_dim()), precision: p }
    }

    pub fn one(p: Precision) -> Self {
        Self::monomial(Monomial::ONE, p)
    }

    /// The monomial, or zero when it vanishes at this precision.
    pub fn monomial(m: Monomial, p: Precision) -> Self {
        let mut e = Self::zero(p);
        if m.fits(p) {
            e.coeffs.set(m.index(), true);
        }
        e
    }

    pub fn from_monomials(ms: impl IntoIterator<Item = Monomial>, p: Precision) -> Self {
        ms.into_iter().fold(Self::zero(p), |acc, m| &acc + &Self::monomial(m, p))
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn coeff(&self, m: Monomial) -> bool {
        m.fits(self.precision) && self.coeffs.get(m.index())
    }

    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.coeffs.ones().map(Monomial::from_index)
    }

    /// The common degree of all terms, if the element is nonzero and homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms().map(Monomial::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        if self.precision != other.precision {
            return Err(RingError::PrecisionMismatch(self.precision.0, other.precision.0));
        }
        let mut out = Self::zero(self.precision);
        for a in self.terms() {
            for b in other.terms() {
                if let Some(c) = a.mul(b, self.precision) {
                    out.coeffs.flip(c.index());
                }
            }
        }
        Ok(out)
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    fn add(self, other: &RingElement) -> RingElement {
        assert_eq!(self.precision, other.precision, "adding ring elements of different precision");
        let mut coeffs = self.coeffs.clone();
        coeffs.xor_assign(&other.coeffs);
        RingElement { coeffs, precision: self.precision }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.terms().map(|m| m.to_string()).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// All monomials of R_p, in index order.
pub fn monomials(p: Precision) -> impl Iterator<Item = Monomial> {
    (0..p.ring_dim()).map(Monomial::from_index)
}

/// The non-unit monomials of R_p.
pub fn nonunit_monomials(p: Precision) -> impl Iterator<Item = Monomial> {
    monomials(p).skip(1)
}

/// Monomials V^i Q^j with −4i − j = d, i < p.
pub fn basis_in_degree(d: i64, p: Precision) -> Vec<Monomial> {
    Monomial::of_degree(d).filter(|m| m.fits(p)).into_iter().collect()
}

/// Basis of R̄ (the augmentation ideal, spanned by non-unit monomials) in degree `d`.
pub fn augmentation_ideal_basis(d: i64, p: Precision) -> Result<Vec<Monomial>, RingError> {
    if d == 0 {
        return Err(RingError::DegreeZero);
    }
    Ok(basis_in_degree(d, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u32) -> Precision {
        Precision::new(n).unwrap()
    }

    #[test]
    fn products() {
        let q = RingElement::monomial(Monomial::Q, p(3));
        let q2 = RingElement::monomial(Monomial::Q2, p(3));
        let v = RingElement::monomial(Monomial::V, p(3));
        assert!(q.mul(&q2).unwrap().is_zero());
        let vq = v.mul(&q).unwrap();
        assert_eq!(vq.terms().collect::<Vec<_>>(), vec![Monomial { v: 1, q: 1 }]);
        assert_eq!(vq.degree(), Some(-5));
        let top = RingElement::monomial(Monomial { v: 2, q: 0 }, p(3));
        assert!(top.mul(&v).unwrap().is_zero());
        assert_eq!(q.mul(&RingElement::one(p(4))), Err(RingError::PrecisionMismatch(3, 4)));
    }

    #[test]
    fn degree_bases() {
        let s = |d, n| basis_in_degree(d, p(n)).iter().map(|m| m.to_string()).collect::<Vec<_>>();
        assert_eq!(s(0, 1), ["V^0*Q^0"]);
        assert_eq!(s(-4, 2), ["V^1*Q^0"]);
        assert_eq!(s(-1, 1), ["V^0*Q^1"]);
        assert_eq!(s(-5, 2), ["V^1*Q^1"]);
        assert_eq!(s(-6, 2), ["V^1*Q^2"]);
        assert!(s(-3, 5).is_empty());
        assert!(s(-4, 1).is_empty());
    }

    #[test]
    fn augmentation_ideal() {
        assert_eq!(augmentation_ideal_basis(-1, p(1)).unwrap(), vec![Monomial::Q]);
        assert_eq!(augmentation_ideal_basis(-2, p(1)).unwrap(), vec![Monomial::Q2]);
        assert_eq!(augmentation_ideal_basis(-8, p(3)).unwrap(), vec![Monomial { v: 2, q: 0 }]);
        assert!(augmentation_ideal_basis(-8, p(2)).unwrap().is_empty());
        assert_eq!(augmentation_ideal_basis(0, p(2)), Err(RingError::DegreeZero));
    }

    #[test]
    fn monomial_text_forms() {
        for (s, m) in [
            ("V^2*Q^1", Monomial { v: 2, q: 1 }),
            ("Q2", Monomial::Q2),
            ("VQ", Monomial { v: 1, q: 1 }),
            ("1", Monomial::ONE),
            ("V^3Q^2", Monomial { v: 3, q: 2 }),
        ] {
            assert_eq!(s.parse::<Monomial>().unwrap(), m);
        }
        assert!("Q3".parse::<Monomial>().is_err());
        assert!("X".parse::<Monomial>().is_err());
        assert!("".parse::<Monomial>().is_err());
    }
}
