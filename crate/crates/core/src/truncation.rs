//! Finite windows onto the (infinite) basis.

use serde::{Deserialize, Serialize};

use crate::basis::{AlgebraSignature, BasisElement, Element, MultiIndex};
use crate::error::{Result, WittError};

/// Inclusive exponent bounds per coordinate; every direction is included.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TruncationBox {
    pub exp: Vec<(i64, i64)>,
    pub poly: Vec<(i64, i64)>,
}

impl TruncationBox {
    pub fn new(exp: Vec<(i64, i64)>, poly: Vec<(i64, i64)>) -> Result<Self> {
        let b = TruncationBox { exp, poly };
        if let Some((lo, hi)) = b.exp.iter().chain(&b.poly).find(|(lo, hi)| lo > hi) {
            return Err(WittError::InvalidBox(format!("empty range {lo}:{hi}")));
        }
        if b.poly.len() < b.exp.len() {
            return Err(WittError::InvalidBox("fewer polynomial than exponential ranges".into()));
        }
        Ok(b)
    }

    /// Same range on every coordinate of a signature.
    pub fn uniform(sig: &AlgebraSignature, exp: (i64, i64), poly: (i64, i64)) -> Result<Self> {
        Self::new(vec![exp; sig.n], vec![poly; sig.total()])
    }

    pub fn n(&self) -> usize {
        self.exp.len()
    }

    pub fn total(&self) -> usize {
        self.poly.len()
    }

    pub fn check_signature(&self, sig: &AlgebraSignature) -> Result<()> {
        if self.n() != sig.n || self.total() != sig.total() {
            return Err(WittError::InvalidBox(format!(
                "box has dims ({}, {}), signature {sig} needs ({}, {})",
                self.n(),
                self.total(),
                sig.n,
                sig.total()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, b: &BasisElement) -> bool {
        let inside = |v: &MultiIndex, r: &[(i64, i64)]| {
            v.len() == r.len() && v.0.iter().zip(r).all(|(x, (lo, hi))| lo <= x && x <= hi)
        };
        inside(&b.exp, &self.exp) && inside(&b.poly, &self.poly) && b.dir >= 1 && b.dir <= self.total()
    }

    pub fn contains_element(&self, e: &Element) -> bool {
        e.keys().all(|b| self.contains(b))
    }

    /// Every basis element of `sig` in the box, ascending.
    pub fn basis(&self, sig: &AlgebraSignature) -> Vec<BasisElement> {
        let mut out = Vec::new();
        let exps = grid(&self.exp);
        let polys = grid(&self.poly);
        for e in &exps {
            for p in &polys {
                for dir in 1..=self.total() {
                    let b = BasisElement { exp: MultiIndex(e.clone()), poly: MultiIndex(p.clone()), dir };
                    if sig.contains(&b) {
                        out.push(b);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Number of lattice points times directions, ignoring membership.
    pub fn cardinality(&self) -> u128 {
        self.exp
            .iter()
            .chain(&self.poly)
            .map(|(lo, hi)| (hi - lo + 1) as u128)
            .product::<u128>()
            * self.total() as u128
    }
}

fn grid(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(ranges.len())];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
