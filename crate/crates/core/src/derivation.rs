//! Derivations of W*(1,0): scalar and inner derivations, the antiderivative
//! on `F[e^{±x}, x]`, and the decomposition of a tabulated derivation into
//! `ad_{g∂} + c·ad_∂ + D_d`.
//!
//! An additive map `Z → F` is determined by its value at 1, so a scalar
//! derivation is stored as a single slope `d` with `D_d(e^{ax}x^i∂) = d·a·e^{ax}x^i∂`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::basis::{AlgebraSignature, BasisElement, Element, FunctionElement, FunctionTerm, MultiIndex};
use crate::bracket::{act, bracket};
use crate::error::{Result, WittError};
use crate::lincomb::{int, Rational};
use crate::truncation::TruncationBox;

/// The algebra all tables live on.
pub fn wstar10() -> AlgebraSignature {
    AlgebraSignature::wstar(1, 0)
}

/// `e^{ax} x^i ∂`.
pub fn monomial(a: i64, i: i64) -> BasisElement {
    BasisElement::new([a], [i], 1)
}

/// Truncation `a ∈ [a_lo, a_hi]`, `i ∈ [0, i_max]` on W*(1,0).
pub fn wstar_box(a_lo: i64, a_hi: i64, i_max: i64) -> Result<TruncationBox> {
    TruncationBox::new(vec![(a_lo, a_hi)], vec![(0, i_max)])
}

/// A linear map on W*(1,0) given by its values on a finite window of basis
/// elements. Images may leave the window.
#[derive(Clone, PartialEq, Debug)]
pub struct DerivationTable {
    pub trunc: TruncationBox,
    pub images: BTreeMap<BasisElement, Element>,
}

impl DerivationTable {
    pub fn new(trunc: TruncationBox, images: BTreeMap<BasisElement, Element>) -> Result<Self> {
        trunc.check_signature(&wstar10())?;
        for b in trunc.basis(&wstar10()) {
            if !images.contains_key(&b) {
                return Err(WittError::OutOfTruncation(format!("{b:?}")));
            }
        }
        for (b, img) in &images {
            wstar10().admits(b)?;
            wstar10().admits_element(img)?;
        }
        Ok(DerivationTable { trunc, images })
    }

    /// Builds the table of `op` on every basis element of the window.
    pub fn tabulate(trunc: TruncationBox, mut op: impl FnMut(&BasisElement) -> Result<Element>) -> Result<Self> {
        let mut images = BTreeMap::new();
        for b in trunc.basis(&wstar10()) {
            let img = op(&b)?;
            images.insert(b, img);
        }
        Self::new(trunc, images)
    }

    pub fn image(&self, b: &BasisElement) -> Result<&Element> {
        self.images.get(b).ok_or_else(|| WittError::OutOfTruncation(format!("{b:?}")))
    }

    /// Linear extension to elements supported in the table's domain.
    pub fn apply(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (b, c) in e.iter() {
            out += &self.image(b)?.scale(c);
        }
        Ok(out)
    }

    pub fn domain(&self) -> impl Iterator<Item = &BasisElement> + '_ {
        self.images.keys()
    }
}

/// `D_d`: scales `e^{ax}x^i∂` by `d·a`.
pub fn scalar_derivation_apply(d: &Rational, e: &Element) -> Element {
    let mut out = Element::zero();
    for (b, c) in e.iter() {
        out.add_term(b.clone(), c * d * int(b.exp.get(0)));
    }
    out
}

/// `ad_g(e) = [g, e]`.
pub fn inner_derivation_apply(g: &Element, e: &Element) -> Result<Element> {
    bracket(g, e)
}

/// `f ∂` for a one-variable function `f`.
pub fn times_partial(f: &FunctionElement) -> Element {
    f.map_keys(|t| BasisElement { exp: t.exp.clone(), poly: t.poly.clone(), dir: 1 })
}

fn check_stable(f: &FunctionElement) -> Result<()> {
    for t in f.keys() {
        if t.dims() != (1, 1) {
            return Err(WittError::DimensionMismatch(format!("expected a function of one variable, got dims {:?}", t.dims())));
        }
        if t.poly.get(0) < 0 {
            return Err(WittError::MembershipViolation(format!("negative power of x in {t:?}")));
        }
    }
    Ok(())
}

/// `f'` on `F[e^{±x}, x]`.
pub fn derivative(f: &FunctionElement) -> Result<FunctionElement> {
    act(&Element::basis(monomial(0, 0)), f)
}

/// A preimage of `f` under `∂` with zero constant term.
///
/// `x^i ↦ x^{i+1}/(i+1)`; for `a ≠ 0`, integration by parts
/// `∫e^{ax}x^i = e^{ax}x^i/a - (i/a)∫e^{ax}x^{i-1}` unrolls to
/// `Σ_k (-1)^k i!/(i-k)! a^{-k-1} e^{ax}x^{i-k}`.
pub fn antiderivative(f: &FunctionElement) -> Result<FunctionElement> {
    check_stable(f)?;
    let mut out = FunctionElement::zero();
    for (t, c) in f.iter() {
        let a = t.exp.get(0);
        let i = t.poly.get(0);
        if a == 0 {
            out.add_term(FunctionTerm::new([0], [i + 1]), c / int(i + 1));
            continue;
        }
        let mut coeff = c / int(a);
        for k in 0..=i {
            out.add_term(FunctionTerm::new([a], [i - k]), coeff.clone());
            coeff = -coeff * int(i - k) / int(a);
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Debug)]
pub struct LeibnizDefect {
    pub index: usize,
    pub defect: Element,
}

/// `D([l1,l2]) - [D(l1),l2] - [l1,D(l2)]` for each pair; only nonzero
/// defects are returned.
pub fn verify_leibniz(table: &DerivationTable, pairs: &[(Element, Element)]) -> Result<Vec<LeibnizDefect>> {
    let mut out = Vec::new();
    for (index, (l1, l2)) in pairs.iter().enumerate() {
        let lhs = table.apply(&bracket(l1, l2)?)?;
        let rhs = bracket(&table.apply(l1)?, l2)? + bracket(l1, &table.apply(l2)?)?;
        let defect = lhs - rhs;
        if !defect.is_zero() {
            out.push(LeibnizDefect { index, defect });
        }
    }
    Ok(out)
}

/// Every pair of window basis elements whose bracket stays in the window.
pub fn in_range_pairs(trunc: &TruncationBox) -> Result<Vec<(Element, Element)>> {
    let basis = trunc.basis(&wstar10());
    let mut out = Vec::new();
    for b1 in &basis {
        for b2 in &basis {
            if trunc.contains_element(&bracket(&Element::basis(b1.clone()), &Element::basis(b2.clone()))?) {
                out.push((Element::basis(b1.clone()), Element::basis(b2.clone())));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, PartialEq, Debug)]
pub struct DecompositionResult {
    /// Inner part `g` (as in `ad_{g∂}`), with zero constant term.
    pub g: FunctionElement,
    /// Coefficient of `ad_∂`.
    pub c: Rational,
    /// Slope of the scalar derivation `D_d`.
    pub d: Rational,
    /// Eigen-slope of `D - ad_{g∂}` on `e^{ax}∂`, equal to `c + d`.
    pub lemma_slope: Rational,
    /// Largest coefficient of the closed-form defect over `checked`.
    pub residual: Rational,
    pub checked: TruncationBox,
}

impl DecompositionResult {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }
}

/// `ad_{g∂} + c·ad_∂ + D_d` tabulated on `trunc`.
pub fn reconstruct_derivation(g: &FunctionElement, c: &Rational, d: &Rational, trunc: &TruncationBox) -> Result<DerivationTable> {
    check_stable(g)?;
    let g_partial = times_partial(g);
    let partial = Element::basis(monomial(0, 0));
    DerivationTable::tabulate(trunc.clone(), |b| {
        let e = Element::basis(b.clone());
        let mut img = bracket(&g_partial, &e)?;
        img += &bracket(&partial, &e)?.scale(c);
        img += &scalar_derivation_apply(d, &e);
        Ok(img)
    })
}

/// Recovers `(g, c, d)` with `D = ad_{g∂} + c·ad_∂ + D_d`.
///
/// 1. `D(∂) = f∂`; since `[g∂, ∂] = -g'∂`, take `g = -∫f` (zero constant term).
/// 2. `D' = D - ad_{g∂}` kills `∂`.
/// 3. `c` is the coefficient of `∂` in `D'(x∂)`.
/// 4. The slope `s` is the coefficient of `e^x∂` in `D'(e^x∂)`, and `d = s - c`.
/// 5. The residual compares `D'(e^{ax}x^i∂)` with
///    `s·a·e^{ax}x^i∂ + c·i·e^{ax}x^{i-1}∂` over the whole window.
pub fn decompose_derivation(table: &DerivationTable) -> Result<DecompositionResult> {
    for anchor in [monomial(0, 0), monomial(0, 1), monomial(1, 0), monomial(-1, 0)] {
        table.image(&anchor)?;
    }
    let d_partial = table.image(&monomial(0, 0))?;
    if let Some(b) = d_partial.keys().find(|b| b.dir != 1) {
        return Err(WittError::NotShapedLikeDerivation(format!("D(∂) has a term off ∂: {b:?}")));
    }
    let f: FunctionElement = d_partial.map_keys(|b| FunctionTerm { exp: b.exp.clone(), poly: b.poly.clone() });
    let g = -antiderivative(&f)?;
    let g_partial = times_partial(&g);

    let reduced = |b: &BasisElement| -> Result<Element> {
        Ok(table.image(b)? - &bracket(&g_partial, &Element::basis(b.clone()))?)
    };

    let c = reduced(&monomial(0, 1))?.coeff(&monomial(0, 0));
    let lemma_slope = reduced(&monomial(1, 0))?.coeff(&monomial(1, 0));
    let d = &lemma_slope - &c;

    let mut residual = Rational::zero();
    for b in table.trunc.basis(&wstar10()) {
        let defect = reduced(&b)? - lemma4_closed_form(&b, &c, &lemma_slope);
        let norm = defect.max_norm();
        if norm > residual {
            residual = norm;
        }
    }

    Ok(DecompositionResult { g, c, d, lemma_slope, residual, checked: table.trunc.clone() })
}

/// `s·a·e^{ax}x^i∂ + c·i·e^{ax}x^{i-1}∂`, the value on `e^{ax}x^i∂` of a
/// derivation that kills `∂`.
pub fn lemma4_closed_form(b: &BasisElement, c: &Rational, slope: &Rational) -> Element {
    let a = b.exp.get(0);
    let i = b.poly.get(0);
    let mut out = Element::term(b.clone(), slope * int(a));
    if i > 0 {
        out.add_term(BasisElement { exp: b.exp.clone(), poly: MultiIndex(vec![i - 1]), dir: 1 }, c * int(i));
    }
    out
}

/// `D` with one image shifted by `delta · extra`.
pub fn corrupt(table: &DerivationTable, at: &BasisElement, extra: &BasisElement, delta: &Rational) -> Result<DerivationTable> {
    let mut images = table.images.clone();
    let slot = images.get_mut(at).ok_or_else(|| WittError::OutOfTruncation(format!("{at:?}")))?;
    slot.add_term(extra.clone(), delta.clone());
    Ok(DerivationTable { trunc: table.trunc.clone(), images })
}

/// `Σ c·e^{ax}x^i` from `(a, i, c)` triples.
pub fn function(terms: &[(i64, i64, Rational)]) -> FunctionElement {
    terms.iter().map(|(a, i, c)| (FunctionTerm::new([*a], [*i]), c.clone())).collect()
}

pub fn one() -> Rational {
    Rational::one()
}
