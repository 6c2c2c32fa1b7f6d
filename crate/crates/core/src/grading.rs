//! Gradations, homogeneous decomposition and the canonical term order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::basis::{BasisElement, Element, MultiIndex};
use crate::bracket::bracket_basis;
use crate::error::{Result, WittError};
use crate::lincomb::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum GradeScheme {
    /// Z^k-gradation by the first k exponential indices, `1 ≤ k ≤ n`.
    ExpZk(usize),
    /// Z^{n+m}-gradation: exponential indices, then the pure polynomial
    /// exponents shifted by -1 at the derivative direction.
    FullZnm,
    /// Z^k-gradation of the Laurent Witt algebra (n = 0): the first k
    /// polynomial exponents shifted by -1 at the derivative direction.
    WittZk(usize),
}

impl fmt::Display for GradeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradeScheme::ExpZk(k) => write!(f, "exp:{k}"),
            GradeScheme::FullZnm => f.write_str("full"),
            GradeScheme::WittZk(k) => write!(f, "witt:{k}"),
        }
    }
}

impl std::str::FromStr for GradeScheme {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || WittError::SchemeMismatch { scheme: s.to_string(), reason: "expected exp:k, full or witt:k".into() };
        match s.split_once(':') {
            None if s == "full" => Ok(GradeScheme::FullZnm),
            Some(("exp", k)) => Ok(GradeScheme::ExpZk(k.parse().map_err(|_| bad())?)),
            Some(("witt", k)) => Ok(GradeScheme::WittZk(k.parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct GradeKey(pub MultiIndex);

impl GradeKey {
    pub fn plus(&self, other: &GradeKey) -> GradeKey {
        GradeKey(self.0.plus(&other.0))
    }
}

impl fmt::Display for GradeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0 .0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

fn mismatch(scheme: GradeScheme, reason: String) -> WittError {
    WittError::SchemeMismatch { scheme: scheme.to_string(), reason }
}

/// `x_p` exponent minus one when `p` is the derivative direction (0-based `p`).
fn shifted_power(b: &BasisElement, p: usize) -> i64 {
    b.poly.get(p) - i64::from(b.dir == p + 1)
}

pub fn grade_key(b: &BasisElement, scheme: GradeScheme) -> Result<GradeKey> {
    let (n, total) = b.dims();
    match scheme {
        GradeScheme::ExpZk(k) => {
            if k == 0 || k > n {
                return Err(mismatch(scheme, format!("need 1 <= k <= n = {n}")));
            }
            Ok(GradeKey(MultiIndex(b.exp.0[..k].to_vec())))
        }
        GradeScheme::FullZnm => {
            let mut key = b.exp.0.clone();
            key.extend((n..total).map(|p| shifted_power(b, p)));
            Ok(GradeKey(MultiIndex(key)))
        }
        GradeScheme::WittZk(k) => {
            if n != 0 {
                return Err(mismatch(scheme, format!("needs a signature without exponentials, n = {n}")));
            }
            if k == 0 || k > total {
                return Err(mismatch(scheme, format!("need 1 <= k <= {total}")));
            }
            Ok(GradeKey(MultiIndex((0..k).map(|p| shifted_power(b, p)).collect())))
        }
    }
}

pub fn homogeneous_components(e: &Element, scheme: GradeScheme) -> Result<BTreeMap<GradeKey, Element>> {
    let mut out: BTreeMap<GradeKey, Element> = BTreeMap::new();
    for (b, c) in e.iter() {
        out.entry(grade_key(b, scheme)?).or_default().add_term(b.clone(), c.clone());
    }
    Ok(out)
}

/// Checks that every term of `[b1, b2]` sits in degree `key(b1) + key(b2)`.
/// Returns the first offending term.
pub fn check_bracket_additivity(b1: &BasisElement, b2: &BasisElement, scheme: GradeScheme) -> Result<Option<BasisElement>> {
    let expect = grade_key(b1, scheme)?.plus(&grade_key(b2, scheme)?);
    for b in bracket_basis(b1, b2)?.keys() {
        if grade_key(b, scheme)? != expect {
            return Ok(Some(b.clone()));
        }
    }
    Ok(None)
}

/// Lexicographic comparison of `(exp, poly, dir)`.
pub fn lex_compare(b1: &BasisElement, b2: &BasisElement) -> Result<Ordering> {
    if b1.dims() != b2.dims() {
        return Err(WittError::DimensionMismatch(format!("compare {:?} with {:?}", b1.dims(), b2.dims())));
    }
    Ok(b1.cmp(b2))
}

pub fn leading_term(e: &Element) -> Result<(BasisElement, Rational)> {
    e.leading()
        .map(|(b, c)| (b.clone(), c.clone()))
        .ok_or(WittError::ZeroElement("leading term"))
}

/// Number of distinct exponential multi-indices in the support.
pub fn string_number(e: &Element) -> usize {
    let mut exps: Vec<&MultiIndex> = e.keys().map(|b| &b.exp).collect();
    exps.dedup();
    exps.len()
}

fn in_component(b: &BasisElement, alpha: &GradeKey) -> bool {
    b.exp.0.len() >= alpha.0.len() && b.exp.0[..alpha.0.len()] == alpha.0 .0[..]
}

/// Largest power of `x_u` among the terms whose exponential index starts
/// with `alpha`.
pub fn largest_power(e: &Element, alpha: &GradeKey, u: usize) -> Result<i64> {
    if let Some((b, _)) = e.leading() {
        if u == 0 || u > b.total() {
            return Err(WittError::DimensionMismatch(format!("variable index {u} outside 1..={}", b.total())));
        }
    }
    e.keys()
        .filter(|b| in_component(b, alpha))
        .map(|b| b.poly.get(u - 1))
        .max()
        .ok_or_else(|| WittError::EmptyComponent(alpha.to_string()))
}

/// Largest power over the exponential variables `x_1..x_n`.
pub fn lp(e: &Element, alpha: &GradeKey) -> Result<i64> {
    let n = e.leading().map(|(b, _)| b.n()).unwrap_or(0);
    if n == 0 {
        return Err(WittError::DimensionMismatch("lp needs at least one exponential variable".into()));
    }
    let mut best = None;
    for u in 1..=n {
        let p = largest_power(e, alpha, u)?;
        best = Some(best.map_or(p, |q: i64| q.max(p)));
    }
    best.ok_or_else(|| WittError::EmptyComponent(alpha.to_string()))
}

/// `ad_{∂_u}^{p+1}(e)` with `p` the largest power of `x_u` in the support.
///
/// Terms with `a_u = 0` are polynomial in `x_u` and vanish; terms with
/// `a_u ≠ 0` survive. Terms with `a_u = 0` and a negative power of `x_u`
/// are never annihilated and are rejected.
pub fn annihilate_component(e: &Element, u: usize) -> Result<Element> {
    let Some((lead, _)) = e.leading() else {
        return Ok(Element::zero());
    };
    let (n, total) = lead.dims();
    if u == 0 || u > n {
        return Err(WittError::DimensionMismatch(format!("exponential variable {u} outside 1..={n}")));
    }
    if let Some(b) = e.keys().find(|b| b.exp.get(u - 1) == 0 && b.poly.get(u - 1) < 0) {
        return Err(WittError::NegativeExponent(format!("{b:?}")));
    }
    let p = e.keys().map(|b| b.poly.get(u - 1)).max().unwrap_or(0);
    let partial = Element::basis(BasisElement::partial(n, total, u));
    let mut out = e.clone();
    for _ in 0..(p + 1).max(0) {
        out = crate::bracket::bracket(&partial, &out)?;
    }
    Ok(out)
}

/// Splits an element of the zero component into its W(n) part (directions
/// `≤ n`) and its abelian part (directions `> n`).
///
/// Membership: exponential index zero and no power of the pure polynomial
/// variables `x_{n+1}..x_{n+m}`.
pub fn split_zero_component(e0: &Element) -> Result<(Element, Element)> {
    let mut witt = Element::zero();
    let mut abelian = Element::zero();
    for (b, c) in e0.iter() {
        let n = b.n();
        if !in_zero_component(b) {
            return Err(WittError::NotInZeroComponent(format!("{b:?}")));
        }
        if b.dir <= n {
            witt.add_term(b.clone(), c.clone());
        } else {
            abelian.add_term(b.clone(), c.clone());
        }
    }
    Ok((witt, abelian))
}

pub fn in_zero_component(b: &BasisElement) -> bool {
    b.exp.is_zero() && b.poly.0[b.n()..].iter().all(|&x| x == 0)
}
