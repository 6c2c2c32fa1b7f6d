//! The quantum torus `F_q[x^{±1}, y^{±1}]` with `yx = qxy`, its commutator Lie
//! algebra, and the abstract algebra V̄ on pairs `(a, i)`.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Result, WittError};
use crate::lincomb::{pow_i64, LinComb, Rational};

/// A rational `q` that is not a root of unity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QParam(Rational);

impl QParam {
    pub fn new(q: Rational) -> Result<Self> {
        if q.is_zero() || q == Rational::one() || q == -Rational::one() {
            return Err(WittError::InvalidQ(format!("q = {q} is zero or a root of unity")));
        }
        Ok(QParam(q))
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn pow(&self, k: i64) -> Rational {
        pow_i64(&self.0, k)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `x^i y^j`, also used for the V̄ basis vector `(i, j)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct TorusWord {
    pub i: i64,
    pub j: i64,
}

impl TorusWord {
    pub fn new(i: i64, j: i64) -> Self {
        TorusWord { i, j }
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0
    }
}

impl fmt::Display for TorusWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

pub type TorusElement = LinComb<TorusWord>;

/// `[(a,i),(b,j)] = (q^{bi} - q^{aj})(a+b, i+j)`.
pub fn vbar_bracket(a: i64, i: i64, b: i64, j: i64, q: &QParam) -> (Rational, TorusWord) {
    (q.pow(b * i) - q.pow(a * j), TorusWord::new(a + b, i + j))
}

/// Bilinear extension of [`vbar_bracket`].
pub fn vbar_bracket_elements(e1: &TorusElement, e2: &TorusElement, q: &QParam) -> TorusElement {
    let mut out = TorusElement::zero();
    for (w1, c1) in e1.iter() {
        for (w2, c2) in e2.iter() {
            let (k, w) = vbar_bracket(w1.i, w1.j, w2.i, w2.j, q);
            out.add_term(w, k * c1 * c2);
        }
    }
    out
}

pub fn vbar_jacobi(e1: &TorusElement, e2: &TorusElement, e3: &TorusElement, q: &QParam) -> TorusElement {
    let br = |a: &TorusElement, b: &TorusElement| vbar_bracket_elements(a, b, q);
    br(&br(e1, e2), e3) + br(&br(e2, e3), e1) + br(&br(e3, e1), e2)
}

/// `x^i y^j · x^l y^m = q^{jl} x^{i+l} y^{j+m}`.
pub fn word_product(w1: TorusWord, w2: TorusWord, q: &QParam) -> (Rational, TorusWord) {
    (q.pow(w1.j * w2.i), TorusWord::new(w1.i + w2.i, w1.j + w2.j))
}

/// `[x^i y^j, x^l y^m] = (q^{jl} - q^{mi}) x^{i+l} y^{j+m}`.
pub fn word_bracket(w1: TorusWord, w2: TorusWord, q: &QParam) -> TorusElement {
    let (c12, w) = word_product(w1, w2, q);
    let (c21, _) = word_product(w2, w1, q);
    TorusElement::term(w, c12 - c21)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Letter {
    X(i8),
    Y(i8),
}

fn spell(w: TorusWord) -> Vec<Letter> {
    let x = std::iter::repeat_n(Letter::X(w.i.signum() as i8), w.i.unsigned_abs() as usize);
    let y = std::iter::repeat_n(Letter::Y(w.j.signum() as i8), w.j.unsigned_abs() as usize);
    x.chain(y).collect()
}

/// Normal-orders a letter word by adjacent swaps `y^s x^t = q^{st} x^t y^s`
/// and cancellation, without using the closed-form product.
pub fn normal_order(word: &[(i8, i8)], q: &QParam) -> (Rational, TorusWord) {
    let mut letters: Vec<Letter> = word.iter().map(|&(x, y)| if x != 0 { Letter::X(x) } else { Letter::Y(y) }).collect();
    let mut coeff = Rational::one();
    loop {
        let swap = letters.windows(2).position(|p| matches!(p, [Letter::Y(_), Letter::X(_)]));
        let Some(k) = swap else { break };
        if let (Letter::Y(s), Letter::X(t)) = (letters[k], letters[k + 1]) {
            coeff *= q.pow(i64::from(s) * i64::from(t));
            letters.swap(k, k + 1);
        }
    }
    let i = letters.iter().map(|l| if let Letter::X(t) = l { i64::from(*t) } else { 0 }).sum();
    let j = letters.iter().map(|l| if let Letter::Y(s) = l { i64::from(*s) } else { 0 }).sum();
    (coeff, TorusWord::new(i, j))
}

fn letters_of(w: TorusWord) -> Vec<(i8, i8)> {
    spell(w)
        .into_iter()
        .map(|l| match l {
            Letter::X(t) => (t, 0),
            Letter::Y(s) => (0, s),
        })
        .collect()
}

/// Commutator computed letter by letter; the oracle for [`word_bracket`].
pub fn word_bracket_oracle(w1: TorusWord, w2: TorusWord, q: &QParam) -> TorusElement {
    let cat = |a: TorusWord, b: TorusWord| {
        let mut v = letters_of(a);
        v.extend(letters_of(b));
        normal_order(&v, q)
    };
    let (c12, w) = cat(w1, w2);
    let (c21, w_rev) = cat(w2, w1);
    let mut out = TorusElement::term(w, c12);
    out.add_term(w_rev, -c21);
    out
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ThetaDefect {
    pub left: TorusWord,
    pub right: TorusWord,
    pub via_words: String,
    pub via_vbar: String,
}

/// θ(x^h y^k) = (h, k).
pub fn theta(w: TorusWord) -> TorusWord {
    w
}

/// Pairs where `map(word_bracket)` and `vbar_bracket` of the mapped words disagree.
pub fn theta_check(pairs: &[(TorusWord, TorusWord)], q: &QParam) -> Vec<ThetaDefect> {
    theta_check_with(theta, pairs, q)
}

pub fn theta_check_with(map: impl Fn(TorusWord) -> TorusWord, pairs: &[(TorusWord, TorusWord)], q: &QParam) -> Vec<ThetaDefect> {
    let mut out = Vec::new();
    for &(w1, w2) in pairs {
        let lhs = word_bracket(w1, w2, q).map_keys(|w| map(*w));
        let (m1, m2) = (map(w1), map(w2));
        let (k, w) = vbar_bracket(m1.i, m1.j, m2.i, m2.j, q);
        let rhs = TorusElement::term(w, k);
        if lhs != rhs {
            out.push(ThetaDefect { left: w1, right: w2, via_words: format_torus(&lhs), via_vbar: format_torus(&rhs) });
        }
    }
    out
}

fn square(bound: i64) -> impl Iterator<Item = TorusWord> {
    (-bound..=bound).flat_map(move |a| (-bound..=bound).map(move |i| TorusWord::new(a, i)))
}

fn check_bound(bound: u32) -> Result<i64> {
    if bound == 0 {
        return Err(WittError::InvalidBox("probe bound must be at least 1".into()));
    }
    Ok(i64::from(bound))
}

/// Words within the bound that bracket to zero with every word within the bound.
pub fn center_probe(bound: u32, q: &QParam) -> Result<Vec<TorusWord>> {
    let bound = check_bound(bound)?;
    Ok(square(bound)
        .filter(|w| square(bound).all(|v| vbar_bracket(w.i, w.j, v.i, v.j, q).0.is_zero()))
        .collect())
}

/// Nonzero words `h` within the bound with `[h, v] ∈ F·v` for every `v` within the bound.
pub fn toral_probe(bound: u32, q: &QParam) -> Result<Vec<TorusWord>> {
    let bound = check_bound(bound)?;
    Ok(square(bound)
        .filter(|h| !h.is_identity())
        .filter(|h| {
            square(bound).all(|v| {
                let (k, w) = vbar_bracket(h.i, h.j, v.i, v.j, q);
                k.is_zero() || w == v
            })
        })
        .collect())
}

/// `c * (a,b)` terms joined by ` + `; `0` for the zero element.
pub fn format_torus(e: &TorusElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.iter().map(|(w, c)| format!("{c} * {w}")).collect::<Vec<_>>().join(" + ")
}
