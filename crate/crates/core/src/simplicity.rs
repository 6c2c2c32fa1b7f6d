//! Finite, constructive evidence for the ideal structure of W-family algebras.
//!
//! Nothing here proves simplicity. The probes compute explicit brackets in a
//! truncated window and report what they find: witnesses for the reduction
//! steps used in the simplicity argument, ideal closures, and ad-diagonal
//! checks.

use std::collections::VecDeque;

use num_traits::Zero;
use serde::Serialize;

use crate::basis::{AlgebraSignature, BasisElement, Element, MultiIndex};
use crate::bracket::{bracket, bracket_basis};
use crate::error::{Result, WittError};
use crate::lincomb::{int, LinComb, Rational};
use crate::linalg::RowBasis;
use crate::truncation::TruncationBox;

/// Upper bound on how far `lemma1_witness` raises the multiplier power.
const LEMMA1_MAX_STEPS: i64 = 256;

#[derive(Clone, PartialEq, Debug)]
pub struct Lemma1Witness {
    /// `x^u ∂_i`.
    pub s: BasisElement,
    /// `[s, l]`, nonzero with every polynomial exponent at least 1.
    pub lprime: Element,
}

/// Finds `s = x^u ∂_i` with `[s, l] ≠ 0` and only positive polynomial powers.
///
/// `u` starts at `1 + max(0, -min exponent)` per coordinate and all
/// coordinates are raised together until the conditions hold; directions are
/// tried in ascending order at each level.
pub fn lemma1_witness(l: &Element) -> Result<Lemma1Witness> {
    let (lead, _) = l.leading().ok_or(WittError::ZeroElement("lemma1 witness"))?;
    let (n, total) = lead.dims();
    let base: Vec<i64> = (0..total)
        .map(|c| {
            let min = l.keys().map(|b| b.poly.get(c)).min().unwrap_or(0);
            1 + (-min).max(0)
        })
        .collect();
    for step in 0..LEMMA1_MAX_STEPS {
        let u = MultiIndex(base.iter().map(|x| x + step).collect());
        for dir in 1..=total {
            let s = BasisElement { exp: MultiIndex::zeros(n), poly: u.clone(), dir };
            let lprime = bracket(&Element::basis(s.clone()), l)?;
            if !lprime.is_zero() && lprime.keys().all(|b| b.poly.0.iter().all(|&x| x >= 1)) {
                return Ok(Lemma1Witness { s, lprime });
            }
        }
    }
    unreachable!("no lemma1 witness within {LEMMA1_MAX_STEPS} steps")
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ReachCase {
    /// `β = 0`: one bracket `[∂_u, e^α ∂_t] = a_u e^α ∂_t`.
    Direct,
    /// `u ≠ t`: the two brackets differ by `a_u` times the target.
    DistinctDirections,
    /// `u = t`: the two brackets differ by `2 a_u` times the target.
    SameDirection,
}

#[derive(Clone, PartialEq, Debug)]
pub struct BracketStep {
    pub left: BasisElement,
    pub right: BasisElement,
    pub weight: Rational,
}

/// `Σ weight · [left, right] = multiple · target`.
#[derive(Clone, PartialEq, Debug)]
pub struct ReachRecipe {
    pub target: BasisElement,
    pub u: usize,
    pub case: ReachCase,
    pub steps: Vec<BracketStep>,
    pub multiple: Rational,
}

impl ReachRecipe {
    pub fn replay(&self) -> Result<Element> {
        let mut out = Element::zero();
        for step in &self.steps {
            out += &bracket_basis(&step.left, &step.right)?.scale(&step.weight);
        }
        Ok(out)
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(!self.multiple.is_zero() && self.replay()? == Element::term(self.target.clone(), self.multiple.clone()))
    }
}

/// Brackets that produce a multiple of `target` starting from `∂_u`.
///
/// `start_dir` selects the exponential variable `u` when `a_{start_dir} ≠ 0`;
/// otherwise the first `u` with `a_u ≠ 0` is used.
pub fn lemma2_reach(target: &BasisElement, start_dir: usize) -> Result<ReachRecipe> {
    let (n, total) = target.dims();
    if start_dir == 0 || start_dir > total {
        return Err(WittError::DimensionMismatch(format!("start direction {start_dir} outside 1..={total}")));
    }
    let u = if start_dir <= n && target.exp.get(start_dir - 1) != 0 {
        start_dir
    } else {
        (1..=n)
            .find(|&u| target.exp.get(u - 1) != 0)
            .ok_or_else(|| WittError::NoExponentialPart(format!("{target:?}")))?
    };
    let a_u = target.exp.get(u - 1);
    let partial_u = BasisElement::partial(n, total, u);

    if target.poly.is_zero() {
        return Ok(ReachRecipe {
            target: target.clone(),
            u,
            case: ReachCase::Direct,
            steps: vec![BracketStep { left: partial_u, right: target.clone(), weight: int(1) }],
            multiple: int(a_u),
        });
    }

    let exp_u = BasisElement { exp: MultiIndex::zeros(n).shifted(u - 1, a_u), poly: MultiIndex::zeros(total), dir: u };
    let rest = BasisElement { exp: target.exp.shifted(u - 1, -a_u), poly: target.poly.clone(), dir: target.dir };
    let same = u == target.dir;
    Ok(ReachRecipe {
        target: target.clone(),
        u,
        case: if same { ReachCase::SameDirection } else { ReachCase::DistinctDirections },
        steps: vec![
            BracketStep { left: partial_u, right: target.clone(), weight: int(1) },
            BracketStep { left: exp_u, right: rest, weight: int(-1) },
        ],
        multiple: int(if same { 2 * a_u } else { a_u }),
    })
}

/// Whether `[∂_u, e] ≠ 0`.
pub fn nonvanishing_ad(e: &Element, u: usize) -> Result<bool> {
    let Some((lead, _)) = e.leading() else {
        return Ok(false);
    };
    let (n, total) = lead.dims();
    if u == 0 || u > n {
        return Err(WittError::DimensionMismatch(format!("exponential variable {u} outside 1..={n}")));
    }
    let partial = Element::basis(BasisElement::partial(n, total, u));
    Ok(!bracket(&partial, e)?.is_zero())
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClosureReport {
    pub dimension: usize,
    pub reached_partials: Vec<usize>,
    pub generators_used: usize,
    pub overflow_discards: usize,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub enum Origin {
    Generator(usize),
    Bracket { multiplier: BasisElement, source: usize },
}

/// A vector that entered the span, with how it was produced.
#[derive(Clone, PartialEq, Debug)]
pub struct DerivedVector {
    pub value: Element,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub report: ClosureReport,
    pub derived: Vec<DerivedVector>,
    basis: RowBasis<BasisElement>,
}

impl Closure {
    pub fn contains(&self, e: &Element) -> bool {
        self.basis.contains(e)
    }

    /// Reduced basis rows, each with its combination of derived vectors.
    pub fn rows(&self) -> impl Iterator<Item = (&Element, &LinComb<usize>)> + '_ {
        self.basis.rows()
    }

    /// Recomputes every derived vector from its origin and every row from its
    /// combination.
    pub fn replay(&self, generators: &[Element]) -> Result<bool> {
        for dv in &self.derived {
            let value = match &dv.origin {
                Origin::Generator(k) => generators[*k].clone(),
                Origin::Bracket { multiplier, source } => {
                    bracket(&Element::basis(multiplier.clone()), &self.derived[*source].value)?
                }
            };
            if value != dv.value {
                return Ok(false);
            }
        }
        for (row, combo) in self.rows() {
            let mut rebuilt = Element::zero();
            for (k, c) in combo.iter() {
                rebuilt += &self.derived[*k].value.scale(c);
            }
            if &rebuilt != row {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Smallest subspace containing `generators` and closed under `ad_q` for
/// every basis element `q` of `sig` in `multiplier_box`, keeping a bracket
/// only when its whole support lies in `bx`.
///
/// Generators are processed first-in first-out and multipliers in ascending
/// term order, so the result is deterministic.
pub fn ideal_closure(
    generators: &[Element],
    sig: &AlgebraSignature,
    bx: &TruncationBox,
    multiplier_box: &TruncationBox,
) -> Result<Closure> {
    if generators.is_empty() {
        return Err(WittError::EmptyGenerators);
    }
    bx.check_signature(sig)?;
    multiplier_box.check_signature(sig)?;
    for (index, g) in generators.iter().enumerate() {
        if g.is_zero() {
            return Err(WittError::ZeroElement("generator"));
        }
        if !bx.contains_element(g) {
            return Err(WittError::GeneratorOutsideBox { index });
        }
        sig.admits_element(g)?;
    }

    let multipliers: Vec<Element> = multiplier_box.basis(sig).into_iter().map(Element::basis).collect();
    let mut basis = RowBasis::new();
    let mut derived: Vec<DerivedVector> = Vec::new();
    let mut queue = VecDeque::new();
    let mut generators_used = 0;
    let mut overflow_discards = 0;

    for (k, g) in generators.iter().enumerate() {
        let tag = derived.len();
        if basis.insert(g.clone(), tag) {
            derived.push(DerivedVector { value: g.clone(), origin: Origin::Generator(k) });
            queue.push_back(tag);
            generators_used += 1;
        }
    }

    while let Some(source) = queue.pop_front() {
        for q in &multipliers {
            let value = bracket(q, &derived[source].value)?;
            if value.is_zero() {
                continue;
            }
            if !value.keys().all(|b| bx.contains(b) && sig.contains(b)) {
                overflow_discards += 1;
                continue;
            }
            let tag = derived.len();
            if basis.insert(value.clone(), tag) {
                let multiplier = q.leading().map(|(b, _)| b.clone()).expect("basis multiplier");
                derived.push(DerivedVector { value, origin: Origin::Bracket { multiplier, source } });
                queue.push_back(tag);
            }
        }
    }

    let reached_partials = (1..=sig.total())
        .filter(|&d| {
            let p = BasisElement::partial(sig.n, sig.total(), d);
            bx.contains(&p) && sig.contains(&p) && basis.contains(&Element::basis(p))
        })
        .collect();

    Ok(Closure {
        report: ClosureReport { dimension: basis.dimension(), reached_partials, generators_used, overflow_discards },
        derived,
        basis,
    })
}

/// A bracket that leaves a candidate ideal.
#[derive(Clone, PartialEq, Debug)]
pub struct IdealWitness {
    pub p: BasisElement,
    pub q: BasisElement,
    pub value: Element,
    pub offending: BasisElement,
}

/// Checks that `[p, q]` stays in the span of `in_span` for every in-box `p`
/// in the span and every in-box `q`. `None` means the check passed.
pub fn subspace_is_ideal(
    in_span: impl Fn(&BasisElement) -> bool,
    sig: &AlgebraSignature,
    bx: &TruncationBox,
) -> Result<Option<IdealWitness>> {
    bx.check_signature(sig)?;
    let all = bx.basis(sig);
    for p in all.iter().filter(|b| in_span(b)) {
        for q in &all {
            let value = bracket_basis(p, q)?;
            let bad = value.keys().find(|b| !in_span(b)).cloned();
            if let Some(bad) = bad {
                return Ok(Some(IdealWitness { p: p.clone(), q: q.clone(), offending: bad, value }));
            }
        }
    }
    Ok(None)
}

/// A basis element `b` for which `[candidate, b]` is not a multiple of `b`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiagonalWitness {
    pub basis: BasisElement,
    /// `[candidate, basis]`.
    pub value: Element,
}

/// `[candidate, b]` when it is not a scalar multiple of `b`.
pub fn diagonal_defect(candidate: &Element, b: &BasisElement) -> Result<Option<Element>> {
    let value = bracket(candidate, &Element::basis(b.clone()))?;
    Ok(match value.multiple_of(&Element::basis(b.clone())) {
        Some(_) => None,
        None => Some(value),
    })
}

/// Whether `ad(candidate)` is diagonal on every basis element in the box.
///
/// Basis elements are scanned nearest-first: by total absolute exponential
/// index, then total absolute polynomial exponent, then term order.
pub fn is_ad_diagonal(candidate: &Element, sig: &AlgebraSignature, bx: &TruncationBox) -> Result<Option<DiagonalWitness>> {
    if candidate.is_zero() {
        return Err(WittError::ZeroElement("ad-diagonal test"));
    }
    bx.check_signature(sig)?;
    let mut all = bx.basis(sig);
    all.sort_by_key(|b| {
        let e: i64 = b.exp.0.iter().map(|x| x.abs()).sum();
        let p: i64 = b.poly.0.iter().map(|x| x.abs()).sum();
        (e, p, b.clone())
    });
    for b in all {
        if let Some(value) = diagonal_defect(candidate, &b)? {
            return Ok(Some(DiagonalWitness { basis: b, value }));
        }
    }
    Ok(None)
}

/// Directions `t` for which `x_t ∂_t` is ad-diagonal on the box.
pub fn diagonal_coordinate_fields(sig: &AlgebraSignature, bx: &TruncationBox) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in 1..=sig.total() {
        let cand = Element::basis(BasisElement { exp: MultiIndex::zeros(sig.n), poly: MultiIndex::unit(sig.total(), t - 1), dir: t });
        if is_ad_diagonal(&cand, sig, bx)?.is_none() {
            out.push(t);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b1(a: i64, i: i64) -> BasisElement {
        BasisElement::new([a], [i], 1)
    }

    #[test]
    fn lemma1_examples() {
        let w = lemma1_witness(&Element::basis(b1(0, 0))).unwrap();
        assert_eq!(w.s, b1(0, 2));
        assert_eq!(w.lprime, Element::term(b1(0, 1), int(-2)));

        let w = lemma1_witness(&Element::basis(b1(1, -3))).unwrap();
        assert!(w.s.poly.get(0) >= 5);
        assert_eq!(w.s, b1(0, 5));
        let expect: Element = [(b1(1, 2), int(1)), (b1(1, 1), int(-8))].into_iter().collect();
        assert_eq!(w.lprime, expect);

        assert_eq!(lemma1_witness(&Element::zero()).unwrap_err().code(), "ZeroElement");
    }

    #[test]
    fn lemma2_examples() {
        let r = lemma2_reach(&b1(2, 0), 1).unwrap();
        assert_eq!(r.case, ReachCase::Direct);
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.multiple, int(2));
        assert!(r.verify().unwrap());

        let r = lemma2_reach(&b1(1, 2), 1).unwrap();
        assert_eq!(r.case, ReachCase::SameDirection);
        assert_eq!(r.multiple, int(2));
        assert_eq!(r.steps[0].left, b1(0, 0));
        assert_eq!(r.steps[1].left, b1(1, 0));
        assert_eq!(r.steps[1].right, b1(0, 2));
        assert!(r.verify().unwrap());

        assert_eq!(lemma2_reach(&b1(0, 3), 1).unwrap_err().code(), "NoExponentialPart");
    }

    #[test]
    fn lemma2_distinct_directions() {
        let target = BasisElement::new([-2], [1, 3], 2);
        let r = lemma2_reach(&target, 2).unwrap();
        assert_eq!(r.u, 1);
        assert_eq!(r.case, ReachCase::DistinctDirections);
        assert_eq!(r.multiple, int(-2));
        assert!(r.verify().unwrap());
    }

    #[test]
    fn nonvanishing_examples() {
        assert!(nonvanishing_ad(&Element::basis(b1(1, 1)), 1).unwrap());
        assert!(!nonvanishing_ad(&Element::basis(b1(0, 0)), 1).unwrap());
        let z = Element::basis(b1(1, 0)) - Element::basis(b1(1, 0));
        assert!(!nonvanishing_ad(&z, 1).unwrap());
    }

    #[test]
    fn closure_reaches_partial_in_w10() {
        let sig = AlgebraSignature::w(1, 0);
        let bx = TruncationBox::uniform(&sig, (-2, 2), (0, 2)).unwrap();
        let gens = vec![Element::basis(b1(1, 1))];
        let c = ideal_closure(&gens, &sig, &bx, &bx).unwrap();
        assert_eq!(c.report.reached_partials, vec![1]);
        assert!(c.replay(&gens).unwrap());
    }

    #[test]
    fn closure_in_wplus_stays_in_i1() {
        let sig = AlgebraSignature::wplus();
        let bx = TruncationBox::uniform(&sig, (0, 3), (0, 3)).unwrap();
        let gens = vec![Element::basis(b1(1, 0))];
        let c = ideal_closure(&gens, &sig, &bx, &bx).unwrap();
        assert!(c.report.reached_partials.is_empty());
        assert!(c.rows().all(|(r, _)| r.keys().all(|b| b.exp.get(0) >= 1)));
        assert!(c.replay(&gens).unwrap());
    }

    #[test]
    fn closure_errors() {
        let sig = AlgebraSignature::w(1, 0);
        let bx = TruncationBox::uniform(&sig, (-1, 1), (0, 1)).unwrap();
        assert_eq!(ideal_closure(&[], &sig, &bx, &bx).unwrap_err().code(), "EmptyGenerators");
        let far = vec![Element::basis(b1(5, 0))];
        assert_eq!(ideal_closure(&far, &sig, &bx, &bx).unwrap_err().code(), "GeneratorOutsideBox");
    }

    #[test]
    fn ideal_check_examples() {
        let sig = AlgebraSignature::wplus();
        let bx = TruncationBox::uniform(&sig, (0, 3), (0, 3)).unwrap();
        assert!(subspace_is_ideal(|b| b.exp.get(0) >= 1, &sig, &bx).unwrap().is_none());
        let w = subspace_is_ideal(|b| b.poly.get(0) >= 1, &sig, &bx).unwrap().unwrap();
        assert_eq!((w.p.clone(), w.q.clone()), (b1(0, 1), b1(0, 0)));
        assert_eq!(w.value, Element::term(b1(0, 0), int(-1)));
        assert!(subspace_is_ideal(|_| true, &sig, &bx).unwrap().is_none());
    }

    #[test]
    fn ad_diagonal_examples() {
        let w11 = AlgebraSignature::w(1, 1);
        let bx = TruncationBox::uniform(&w11, (-2, 2), (-1, 2)).unwrap();
        let x2d2 = Element::basis(BasisElement::new([0], [0, 1], 2));
        assert!(is_ad_diagonal(&x2d2, &w11, &bx).unwrap().is_none());

        let w10 = AlgebraSignature::w(1, 0);
        let bx = TruncationBox::uniform(&w10, (-2, 2), (0, 2)).unwrap();
        let wit = is_ad_diagonal(&Element::basis(b1(0, 1)), &w10, &bx).unwrap().unwrap();
        assert_eq!(wit.basis, b1(-1, 0));
        let paper: Element = [(b1(-1, 0), int(1)), (b1(-1, 1), int(1))].into_iter().collect();
        assert_eq!(-wit.value, paper);

        let wit = is_ad_diagonal(&Element::basis(b1(0, 0)), &w10, &bx).unwrap().unwrap();
        assert!(diagonal_defect(&Element::basis(b1(0, 0)), &wit.basis).unwrap().is_some());
        assert_eq!(
            diagonal_defect(&Element::basis(b1(0, 0)), &b1(0, 2)).unwrap(),
            Some(Element::term(b1(0, 1), int(2)))
        );
        assert_eq!(is_ad_diagonal(&Element::zero(), &w10, &bx).unwrap_err().code(), "ZeroElement");
    }
}
