//! Seeded random inputs shared by `selftest` and the acceptance suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witt_core::basis::{AlgebraSignature, BasisElement, Element, FunctionElement, FunctionTerm, MultiIndex};
use witt_core::lincomb::{rat, Rational};
use witt_core::quantum_torus::{TorusElement, TorusWord};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn coeff(rng: &mut impl Rng) -> Rational {
    let num = loop {
        let k = rng.gen_range(-6i64..=6);
        if k != 0 {
            break k;
        }
    };
    rat(num, rng.gen_range(1..=4))
}

/// W(n,m) with `n, m ≤ max` and `n + m ≥ 1`.
pub fn signature(rng: &mut impl Rng, max: usize) -> AlgebraSignature {
    loop {
        let (n, m) = (rng.gen_range(0..=max), rng.gen_range(0..=max));
        if n + m > 0 {
            return AlgebraSignature::w(n, m);
        }
    }
}

/// A member of `sig` with every exponent in `[-r, r]`; signs are folded
/// where the signature forbids negatives.
pub fn basis(rng: &mut impl Rng, sig: &AlgebraSignature, r: i64) -> BasisElement {
    let exp = (0..sig.n)
        .map(|_| {
            let a = rng.gen_range(-r..=r);
            if sig.exp_restricted() { a.abs() } else { a }
        })
        .collect();
    let poly = (0..sig.total())
        .map(|pos| {
            let b = rng.gen_range(-r..=r);
            if sig.poly_restricted(pos) { b.abs() } else { b }
        })
        .collect();
    BasisElement { exp: MultiIndex(exp), poly: MultiIndex(poly), dir: rng.gen_range(1..=sig.total()) }
}

/// A nonzero element with 1 to `max_terms` terms.
pub fn element(rng: &mut impl Rng, sig: &AlgebraSignature, r: i64, max_terms: usize) -> Element {
    loop {
        let k = rng.gen_range(1..=max_terms);
        let e: Element = (0..k).map(|_| (basis(rng, sig, r), coeff(rng))).collect();
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn function_term(rng: &mut impl Rng, n: usize, total: usize, r: i64) -> FunctionTerm {
    FunctionTerm {
        exp: MultiIndex((0..n).map(|_| rng.gen_range(-r..=r)).collect()),
        poly: MultiIndex((0..total).map(|_| rng.gen_range(-r..=r)).collect()),
    }
}

pub fn monomial(rng: &mut impl Rng, n: usize, total: usize, r: i64) -> FunctionElement {
    FunctionElement::basis(function_term(rng, n, total, r))
}

/// `g` supported on `e^{ax}x^i`, `a ∈ [-2,2]`, `i ∈ [0,2]`, without a constant term.
pub fn inner_part(rng: &mut impl Rng) -> FunctionElement {
    let k = rng.gen_range(0..=3);
    (0..k)
        .map(|_| (FunctionTerm::new([rng.gen_range(-2..=2)], [rng.gen_range(0..=2)]), coeff(rng)))
        .collect::<FunctionElement>()
        .filter(|t| !(t.exp.is_zero() && t.poly.is_zero()))
}

pub fn torus_word(rng: &mut impl Rng, r: i64) -> TorusWord {
    TorusWord::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

pub fn torus_element(rng: &mut impl Rng, r: i64) -> TorusElement {
    let k = rng.gen_range(1..=3);
    (0..k).map(|_| (torus_word(rng, r), coeff(rng))).collect()
}
