//! Basis monomials, algebra signatures and the function space they act on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};
use crate::lincomb::LinComb;

/// An integer exponent vector. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn zeros(len: usize) -> Self {
        MultiIndex(vec![0; len])
    }

    /// The unit vector `ε_pos` (0-based `pos`).
    pub fn unit(len: usize, pos: usize) -> Self {
        let mut v = vec![0; len];
        v[pos] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Entry at 0-based `pos`, reading 0 past the end.
    pub fn get(&self, pos: usize) -> i64 {
        self.0.get(pos).copied().unwrap_or(0)
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Copy with `delta` added at 0-based `pos`.
    pub fn shifted(&self, pos: usize, delta: i64) -> MultiIndex {
        let mut v = self.0.clone();
        v[pos] += delta;
        MultiIndex(v)
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex(v)
    }
}

impl<const N: usize> From<[i64; N]> for MultiIndex {
    fn from(v: [i64; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

/// `e^{α·x} x^β ∂_dir`.
///
/// `exp` has length n, `poly` has length n+m, and `dir` is 1-based in
/// `1..=n+m`. The derived ordering compares `(exp, poly, dir)`
/// lexicographically, which is the canonical term order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct BasisElement {
    pub exp: MultiIndex,
    pub poly: MultiIndex,
    pub dir: usize,
}

impl BasisElement {
    /// Unchecked constructor; see [`make_basis`] for the validated one.
    pub fn new(exp: impl Into<MultiIndex>, poly: impl Into<MultiIndex>, dir: usize) -> Self {
        BasisElement { exp: exp.into(), poly: poly.into(), dir }
    }

    /// `∂_dir` in dimensions (n, n+m).
    pub fn partial(n: usize, total: usize, dir: usize) -> Self {
        BasisElement { exp: MultiIndex::zeros(n), poly: MultiIndex::zeros(total), dir }
    }

    /// Number of exponential variables.
    pub fn n(&self) -> usize {
        self.exp.len()
    }

    /// Total number of variables n+m.
    pub fn total(&self) -> usize {
        self.poly.len()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.exp.len(), self.poly.len())
    }
}

/// Finite linear combination of basis monomials.
pub type Element = LinComb<BasisElement>;

/// `e^{γ·x} x^δ`, a monomial of the function space the algebra acts on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct FunctionTerm {
    pub exp: MultiIndex,
    pub poly: MultiIndex,
}

impl FunctionTerm {
    pub fn new(exp: impl Into<MultiIndex>, poly: impl Into<MultiIndex>) -> Self {
        FunctionTerm { exp: exp.into(), poly: poly.into() }
    }

    pub fn one(n: usize, total: usize) -> Self {
        FunctionTerm { exp: MultiIndex::zeros(n), poly: MultiIndex::zeros(total) }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.exp.len(), self.poly.len())
    }
}

pub type FunctionElement = LinComb<FunctionTerm>;

/// Which member of the W family a signature denotes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Variant {
    /// W(n,m): all integer exponents.
    W,
    /// W*(n,m): polynomial exponents non-negative.
    Wstar,
    /// W(n,m,r,s).
    Wrs,
    /// W⁺(1,0): exponential and polynomial exponents non-negative.
    WplusOneZero,
    /// Laurent Witt algebra W(m) = W(0,m).
    Witt,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AlgebraSignature {
    pub variant: Variant,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub s: usize,
}

impl AlgebraSignature {
    pub fn w(n: usize, m: usize) -> Self {
        AlgebraSignature { variant: Variant::W, n, m, r: 0, s: 0 }
    }

    pub fn wstar(n: usize, m: usize) -> Self {
        AlgebraSignature { variant: Variant::Wstar, n, m, r: 0, s: 0 }
    }

    pub fn wrs(n: usize, m: usize, r: usize, s: usize) -> Result<Self> {
        if r > n || s > m {
            return Err(WittError::InvalidSignature(format!(
                "W(n,m,r,s) needs r <= n and s <= m, got ({n},{m},{r},{s})"
            )));
        }
        Ok(AlgebraSignature { variant: Variant::Wrs, n, m, r, s })
    }

    pub fn wplus() -> Self {
        AlgebraSignature { variant: Variant::WplusOneZero, n: 1, m: 0, r: 0, s: 0 }
    }

    pub fn witt(m: usize) -> Self {
        AlgebraSignature { variant: Variant::Witt, n: 0, m, r: 0, s: 0 }
    }

    pub fn total(&self) -> usize {
        self.n + self.m
    }

    /// Whether the polynomial exponent at 0-based `pos` must be non-negative.
    pub fn poly_restricted(&self, pos: usize) -> bool {
        match self.variant {
            Variant::W | Variant::Witt => false,
            Variant::Wstar | Variant::WplusOneZero => true,
            Variant::Wrs => {
                let free = pos < self.r || (pos >= self.n && pos < self.n + self.s);
                !free
            }
        }
    }

    pub fn exp_restricted(&self) -> bool {
        self.variant == Variant::WplusOneZero
    }

    /// Membership predicate on basis elements.
    pub fn admits(&self, b: &BasisElement) -> Result<()> {
        if b.exp.len() != self.n || b.poly.len() != self.total() {
            return Err(WittError::DimensionMismatch(format!(
                "basis element has dims ({}, {}), signature {} needs ({}, {})",
                b.exp.len(),
                b.poly.len(),
                self,
                self.n,
                self.total()
            )));
        }
        if b.dir == 0 || b.dir > self.total() {
            return Err(WittError::MembershipViolation(format!(
                "direction {} outside 1..={}",
                b.dir,
                self.total()
            )));
        }
        if self.exp_restricted() && b.exp.0.iter().any(|&a| a < 0) {
            return Err(WittError::MembershipViolation(format!(
                "{self} needs non-negative exponential indices, got {:?}",
                b.exp.0
            )));
        }
        for (pos, &e) in b.poly.0.iter().enumerate() {
            if e < 0 && self.poly_restricted(pos) {
                return Err(WittError::MembershipViolation(format!(
                    "{self} needs a non-negative power of x{}, got {e}",
                    pos + 1
                )));
            }
        }
        Ok(())
    }

    pub fn contains(&self, b: &BasisElement) -> bool {
        self.admits(b).is_ok()
    }

    pub fn admits_element(&self, e: &Element) -> Result<()> {
        e.keys().try_for_each(|b| self.admits(b))
    }
}

impl fmt::Display for AlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::W => write!(f, "W:{},{}", self.n, self.m),
            Variant::Wstar => write!(f, "Wstar:{},{}", self.n, self.m),
            Variant::Wrs => write!(f, "Wrs:{},{},{},{}", self.n, self.m, self.r, self.s),
            Variant::WplusOneZero => write!(f, "Wplus:1,0"),
            Variant::Witt => write!(f, "Witt:{}", self.m),
        }
    }
}

impl FromStr for AlgebraSignature {
    type Err = WittError;

    /// Parses `W:n,m`, `Wstar:n,m`, `Wrs:n,m,r,s`, `Wplus:1,0` or `Witt:n`.
    fn from_str(src: &str) -> Result<Self> {
        let bad = || WittError::InvalidSignature(format!("cannot parse signature {src:?}"));
        let (name, args) = src.trim().split_once(':').ok_or_else(bad)?;
        let nums = args
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        match (name, nums.as_slice()) {
            ("W", [n, m]) => Ok(Self::w(*n, *m)),
            ("Wstar", [n, m]) => Ok(Self::wstar(*n, *m)),
            ("Wrs", [n, m, r, s]) => Self::wrs(*n, *m, *r, *s),
            ("Wplus", [1, 0]) => Ok(Self::wplus()),
            ("Witt", [m]) => Ok(Self::witt(*m)),
            _ => Err(bad()),
        }
    }
}

/// Validated constructor for basis elements.
pub fn make_basis(
    exp: impl Into<MultiIndex>,
    poly: impl Into<MultiIndex>,
    dir: usize,
    sig: &AlgebraSignature,
) -> Result<BasisElement> {
    let b = BasisElement::new(exp, poly, dir);
    sig.admits(&b)?;
    Ok(b)
}
