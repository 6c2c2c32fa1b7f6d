//! The Lie bracket of W(n,m), its action on functions, and embeddings.
//!
//! For `f = e^α x^l` and `g = e^β x^t`,
//!
//! ```text
//! [f∂_i, g∂_j] = b_i fg ∂_j + t_i fg x_i^{-1} ∂_j - a_j fg ∂_i - l_j fg x_j^{-1} ∂_i
//! ```
//!
//! with `b_i = 0` for `i > n` and `a_j = 0` for `j > n`. This is
//! `f ∂_i(g) ∂_j - g ∂_j(f) ∂_i`, the commutator of the two operators.

use crate::basis::{AlgebraSignature, BasisElement, Element, FunctionElement, FunctionTerm, MultiIndex};
use crate::error::{Result, WittError};
use crate::lincomb::{int, Rational};

/// Which reading of the fourth bracket term to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum BracketForm {
    /// `- l_j fg x_j^{-1} ∂_i`, the commutator of derivations.
    #[default]
    Corrected,
    /// `- l_i fg x_j^{-1} ∂_i` as typeset in the original definition. Not a Lie
    /// bracket; kept only to demonstrate the discrepancy.
    Literal,
}

fn check_dims(b1: &BasisElement, b2: &BasisElement) -> Result<()> {
    if b1.dims() != b2.dims() {
        return Err(WittError::DimensionMismatch(format!(
            "bracket of elements with dims {:?} and {:?}",
            b1.dims(),
            b2.dims()
        )));
    }
    Ok(())
}

/// `[b1, b2]` on basis elements.
pub fn bracket_basis(b1: &BasisElement, b2: &BasisElement) -> Result<Element> {
    bracket_basis_with(BracketForm::Corrected, b1, b2)
}

pub fn bracket_basis_with(form: BracketForm, b1: &BasisElement, b2: &BasisElement) -> Result<Element> {
    check_dims(b1, b2)?;
    let (i, j) = (b1.dir - 1, b2.dir - 1);
    let exp = b1.exp.plus(&b2.exp);
    let poly = b1.poly.plus(&b2.poly);

    let b_i = b2.exp.get(i);
    let t_i = b2.poly.get(i);
    let a_j = b1.exp.get(j);
    let l_4 = match form {
        BracketForm::Corrected => b1.poly.get(j),
        BracketForm::Literal => b1.poly.get(i),
    };

    let mut out = Element::zero();
    let mut push = |coeff: i64, poly: MultiIndex, dir: usize| {
        if coeff != 0 {
            out.add_term(BasisElement { exp: exp.clone(), poly, dir }, int(coeff));
        }
    };
    push(b_i, poly.clone(), b2.dir);
    if t_i != 0 {
        push(t_i, poly.shifted(i, -1), b2.dir);
    }
    push(-a_j, poly.clone(), b1.dir);
    if l_4 != 0 {
        push(-l_4, poly.shifted(j, -1), b1.dir);
    }
    Ok(out)
}

/// Bilinear extension of [`bracket_basis`].
pub fn bracket(e1: &Element, e2: &Element) -> Result<Element> {
    bracket_with(BracketForm::Corrected, e1, e2)
}

pub fn bracket_with(form: BracketForm, e1: &Element, e2: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (b1, c1) in e1.iter() {
        for (b2, c2) in e2.iter() {
            let c = c1 * c2;
            out += &bracket_basis_with(form, b1, b2)?.scale(&c);
        }
    }
    Ok(out)
}

/// Applies the derivation `e` to the function `f`.
///
/// `e^α x^β ∂_i` sends `e^γ x^δ` to `e^α x^β (γ_i e^γ x^δ + δ_i e^γ x^{δ-ε_i})`,
/// with `γ_i = 0` for `i > n`.
pub fn act(e: &Element, f: &FunctionElement) -> Result<FunctionElement> {
    let mut out = FunctionElement::zero();
    for (b, c) in e.iter() {
        let i = b.dir - 1;
        for (ft, k) in f.iter() {
            if ft.dims() != b.dims() {
                return Err(WittError::DimensionMismatch(format!(
                    "operator dims {:?} applied to function dims {:?}",
                    b.dims(),
                    ft.dims()
                )));
            }
            let coeff: Rational = c * k;
            let exp = b.exp.plus(&ft.exp);
            let poly = b.poly.plus(&ft.poly);
            let gamma = ft.exp.get(i);
            let delta = ft.poly.get(i);
            if gamma != 0 {
                out.add_term(FunctionTerm { exp: exp.clone(), poly: poly.clone() }, &coeff * int(gamma));
            }
            if delta != 0 {
                out.add_term(FunctionTerm { exp, poly: poly.shifted(i, -1) }, coeff * int(delta));
            }
        }
    }
    Ok(out)
}

/// `e1(e2(f)) - e2(e1(f))`, computed by composing the two actions.
pub fn act_commutator(e1: &Element, e2: &Element, f: &FunctionElement) -> Result<FunctionElement> {
    let lhs = act(e1, &act(e2, f)?)?;
    let rhs = act(e2, &act(e1, f)?)?;
    Ok(lhs - rhs)
}

/// `[[e1,e2],e3] + [[e2,e3],e1] + [[e3,e1],e2]`.
pub fn jacobi_defect(e1: &Element, e2: &Element, e3: &Element) -> Result<Element> {
    jacobi_defect_with(BracketForm::Corrected, e1, e2, e3)
}

pub fn jacobi_defect_with(form: BracketForm, e1: &Element, e2: &Element, e3: &Element) -> Result<Element> {
    let br = |x: &Element, y: &Element| bracket_with(form, x, y);
    let mut out = br(&br(e1, e2)?, e3)?;
    out += &br(&br(e2, e3)?, e1)?;
    out += &br(&br(e3, e1)?, e2)?;
    Ok(out)
}

/// Embeds `b` from W(n,m) into W(n',m') with n' ≥ n, m' ≥ m.
///
/// Exponential variables keep their index; the pure polynomial variable
/// `x_{n+j}` becomes `x_{n'+j}`. New exponents are zero.
pub fn embed_basis(b: &BasisElement, from: &AlgebraSignature, to: &AlgebraSignature) -> Result<BasisElement> {
    if to.n < from.n || to.m < from.m {
        return Err(WittError::NotEmbeddable { from: from.to_string(), to: to.to_string() });
    }
    from.admits(b)?;
    let mut exp = b.exp.0.clone();
    exp.resize(to.n, 0);
    let mut poly = vec![0; to.total()];
    poly[..from.n].copy_from_slice(&b.poly.0[..from.n]);
    poly[to.n..to.n + from.m].copy_from_slice(&b.poly.0[from.n..]);
    let dir = if b.dir <= from.n { b.dir } else { b.dir - from.n + to.n };
    let out = BasisElement { exp: MultiIndex(exp), poly: MultiIndex(poly), dir };
    to.admits(&out)?;
    Ok(out)
}

pub fn embed(e: &Element, from: &AlgebraSignature, to: &AlgebraSignature) -> Result<Element> {
    let mut out = Element::zero();
    for (b, c) in e.iter() {
        out.add_term(embed_basis(b, from, to)?, c.clone());
    }
    if e.is_zero() && (to.n < from.n || to.m < from.m) {
        return Err(WittError::NotEmbeddable { from: from.to_string(), to: to.to_string() });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::rat;

    fn b1(a: i64, i: i64) -> BasisElement {
        BasisElement::new([a], [i], 1)
    }

    fn el(terms: &[(BasisElement, Rational)]) -> Element {
        terms.iter().cloned().collect()
    }

    fn f1(a: i64, i: i64) -> FunctionElement {
        FunctionElement::basis(FunctionTerm::new([a], [i]))
    }

    #[test]
    fn bracket_examples_one_variable() {
        // [∂, x∂] = ∂
        assert_eq!(bracket_basis(&b1(0, 0), &b1(0, 1)).unwrap(), Element::basis(b1(0, 0)));
        // [e^{-x}∂, e^{x}∂] = 2∂
        assert_eq!(bracket_basis(&b1(-1, 0), &b1(1, 0)).unwrap(), Element::term(b1(0, 0), int(2)));
        // [e^{x}∂, e^{2x}∂] = e^{3x}∂
        assert_eq!(bracket_basis(&b1(1, 0), &b1(2, 0)).unwrap(), Element::basis(b1(3, 0)));
        // [∂, x^4∂] = 4x^3∂
        assert_eq!(bracket_basis(&b1(0, 0), &b1(0, 4)).unwrap(), Element::term(b1(0, 3), int(4)));
    }

    #[test]
    fn bracket_in_w02_matches_commutator() {
        let x2d1 = BasisElement::new([], [0, 1], 1);
        let x1d2 = BasisElement::new([], [1, 0], 2);
        let expect = el(&[
            (BasisElement::new([], [0, 1], 2), int(1)),
            (BasisElement::new([], [1, 0], 1), int(-1)),
        ]);
        assert_eq!(bracket_basis(&x2d1, &x1d2).unwrap(), expect);
        // the literal fourth term drops -x1∂1
        let literal = bracket_basis_with(BracketForm::Literal, &x2d1, &x1d2).unwrap();
        assert_eq!(literal, Element::basis(BasisElement::new([], [0, 1], 2)));
    }

    #[test]
    fn bilinear_bracket_example() {
        let lhs = Element::term(b1(0, 0), int(2));
        let rhs = el(&[(b1(0, 1), int(1)), (b1(0, 2), int(1))]);
        let expect = el(&[(b1(0, 0), int(2)), (b1(0, 1), int(4))]);
        assert_eq!(bracket(&lhs, &rhs).unwrap(), expect);
        assert!(bracket(&Element::zero(), &rhs).unwrap().is_zero());
        assert!(bracket(&rhs, &rhs).unwrap().is_zero());
    }

    #[test]
    fn dimension_mismatch() {
        let a = Element::basis(b1(0, 0));
        let b = Element::basis(BasisElement::new([0], [0, 0], 1));
        assert_eq!(bracket(&a, &b).unwrap_err().code(), "DimensionMismatch");
        assert_eq!(act(&a, &FunctionElement::basis(FunctionTerm::new([0], [0, 0]))).unwrap_err().code(), "DimensionMismatch");
    }

    #[test]
    fn act_examples() {
        // e^{2x}x∂ (e^x) = e^{3x}x
        assert_eq!(act(&Element::basis(b1(2, 1)), &f1(1, 0)).unwrap(), f1(3, 1));
        // ∂(x^3) = 3x^2
        assert_eq!(act(&Element::basis(b1(0, 0)), &f1(0, 3)).unwrap(), f1(0, 2).scale(&int(3)));
        // x∂(c) = 0
        assert!(act(&Element::basis(b1(0, 1)), &f1(0, 0).scale(&rat(7, 2))).unwrap().is_zero());
    }

    #[test]
    fn act_commutator_examples() {
        let d = Element::basis(b1(0, 0));
        let xd = Element::basis(b1(0, 1));
        let x2 = f1(0, 2);
        let comm = act_commutator(&d, &xd, &x2).unwrap();
        assert_eq!(comm, f1(0, 1).scale(&int(2)));
        assert_eq!(comm, act(&d, &x2).unwrap());
        assert!(act_commutator(&xd, &xd, &x2).unwrap().is_zero());
        let em = Element::basis(b1(-1, 0));
        let ep = Element::basis(b1(1, 0));
        let x = f1(0, 1);
        assert_eq!(act_commutator(&em, &ep, &x).unwrap(), f1(0, 0).scale(&int(2)));
        assert_eq!(act(&Element::term(b1(0, 0), int(2)), &x).unwrap(), f1(0, 0).scale(&int(2)));
    }

    #[test]
    fn jacobi_examples() {
        let d = Element::basis(b1(0, 0));
        let xd = Element::basis(b1(0, 1));
        let x2d = Element::basis(b1(0, 2));
        assert!(jacobi_defect(&d, &xd, &x2d).unwrap().is_zero());
        assert!(jacobi_defect(&d, &d, &xd).unwrap().is_zero());
        let ep = Element::basis(b1(1, 0));
        let em = Element::basis(b1(-1, 0));
        assert!(jacobi_defect(&ep, &em, &xd).unwrap().is_zero());
    }

    #[test]
    fn embed_examples() {
        let w10 = AlgebraSignature::w(1, 0);
        let w11 = AlgebraSignature::w(1, 1);
        let w22 = AlgebraSignature::w(2, 2);
        let d = Element::basis(b1(0, 0));
        assert_eq!(embed(&d, &w10, &w11).unwrap(), Element::basis(BasisElement::new([0], [0, 0], 1)));
        let e = Element::basis(BasisElement::new([1], [1, 0], 1));
        assert_eq!(embed(&e, &w11, &w22).unwrap(), Element::basis(BasisElement::new([1, 0], [1, 0, 0, 0], 1)));
        let pure = Element::basis(BasisElement::new([0], [0, 3], 2));
        assert_eq!(embed(&pure, &w11, &w22).unwrap(), Element::basis(BasisElement::new([0, 0], [0, 0, 3, 0], 3)));
        assert_eq!(embed(&e, &w22, &w11).unwrap_err().code(), "NotEmbeddable");
    }
}
