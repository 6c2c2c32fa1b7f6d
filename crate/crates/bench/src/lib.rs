//! Deterministic inputs for the criterion benches.

use witt_core::basis::{AlgebraSignature, BasisElement, Element, MultiIndex};
use witt_core::lincomb::rat;

/// A dense element of `sig`: every basis element with exponents in
/// `[-r, r]`, coefficients cycling through small rationals.
pub fn dense_element(sig: &AlgebraSignature, r: i64, stride: usize) -> Element {
    let bx = witt_core::TruncationBox::uniform(sig, (-r, r), (-r, r)).expect("valid box");
    bx.basis(sig)
        .into_iter()
        .step_by(stride.max(1))
        .enumerate()
        .map(|(k, b)| (b, rat(k as i64 % 7 - 3, 1 + k as i64 % 3)))
        .collect()
}

/// `e^{a x_1} x^β ∂_dir` in W(n,m) with the same exponent `a` everywhere.
pub fn monomial(n: usize, m: usize, a: i64, dir: usize) -> BasisElement {
    BasisElement { exp: MultiIndex(vec![a; n]), poly: MultiIndex(vec![a.abs(); n + m]), dir }
}
