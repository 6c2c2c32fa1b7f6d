//! Text form of elements.
//!
//! ```text
//! element  := term (('+'|'-') term)*
//! term     := [rational] factor+
//! factor   := 'E[' int (',' int)* ']' | 'X[' int (',' int)* ']' | 'D' nat
//! rational := int ['/' nat]
//! ```
//!
//! Whitespace is insignificant. A missing `E` or `X` factor means all zeros,
//! and repeated `E`/`X` factors multiply. The formatter writes terms in
//! descending canonical order with explicit `E` (when n > 0) and `X` factors.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::{AlgebraSignature, BasisElement, Element, FunctionElement, FunctionTerm, MultiIndex};
use crate::derivation::{wstar10, DerivationTable};
use crate::error::{Result, WittError};
use crate::lincomb::{LinComb, Rational};
use crate::truncation::TruncationBox;

fn syntax(pos: usize, msg: impl Into<String>) -> WittError {
    WittError::Syntax { pos, msg: msg.into() }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => Err(syntax(self.pos - 1, format!("expected '{}', found '{}'", c as char, got as char))),
            None => Err(syntax(self.pos, format!("expected '{}', found end of input", c as char))),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(syntax(start, "expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn int(&mut self) -> Result<BigInt> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let v = self.digits()?;
        Ok(if neg { -v } else { v })
    }

    fn small_int(&mut self) -> Result<i64> {
        let start = self.peek().map(|_| self.pos).unwrap_or(self.pos);
        let v = self.int()?;
        i64::try_from(v).map_err(|_| syntax(start, "index out of range"))
    }

    fn index_list(&mut self) -> Result<(usize, Vec<i64>)> {
        self.expect(b'[')?;
        let start = self.pos;
        let mut out = vec![self.small_int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.small_int()?);
        }
        self.expect(b']')?;
        Ok((start, out))
    }
}

struct RawTerm {
    coeff: Rational,
    exp: Option<(usize, Vec<i64>)>,
    poly: Option<(usize, Vec<i64>)>,
    dir: Option<(usize, usize)>,
}

fn add_into(slot: &mut Option<(usize, Vec<i64>)>, pos: usize, v: Vec<i64>) -> Result<()> {
    match slot {
        None => *slot = Some((pos, v)),
        Some((_, cur)) => {
            if cur.len() != v.len() {
                return Err(syntax(pos, "repeated factor with a different number of indices"));
            }
            for (a, b) in cur.iter_mut().zip(v) {
                *a += b;
            }
        }
    }
    Ok(())
}

/// Parses one term after its sign has been consumed. `with_dir` selects the
/// vector-field grammar; otherwise `D` is rejected and bare constants are allowed.
fn parse_term(lx: &mut Lexer, sign: bool, with_dir: bool) -> Result<RawTerm> {
    let mut coeff = Rational::one();
    let term_start = lx.peek().map(|_| lx.pos).unwrap_or(lx.pos);
    if matches!(lx.peek(), Some(b'0'..=b'9') | Some(b'-') | Some(b'+')) {
        let num = lx.int()?;
        let den = if lx.peek() == Some(b'/') {
            lx.pos += 1;
            let at = lx.pos;
            let d = lx.digits()?;
            if d.is_zero() {
                return Err(syntax(at, "zero denominator"));
            }
            d
        } else {
            BigInt::one()
        };
        coeff = Rational::new(num, den);
    }
    if sign {
        coeff = -coeff;
    }
    let mut t = RawTerm { coeff, exp: None, poly: None, dir: None };
    let mut factors = 0;
    while lx.peek().is_some() {
        let at = lx.pos;
        match lx.src[at] {
            b'E' => {
                lx.pos += 1;
                let (pos, v) = lx.index_list()?;
                add_into(&mut t.exp, pos, v)?;
            }
            b'X' => {
                lx.pos += 1;
                let (pos, v) = lx.index_list()?;
                add_into(&mut t.poly, pos, v)?;
            }
            b'D' if with_dir => {
                lx.pos += 1;
                let pos = lx.peek().map(|_| lx.pos).unwrap_or(lx.pos);
                if t.dir.is_some() {
                    return Err(syntax(at, "a term has exactly one direction"));
                }
                let d = lx.digits()?;
                let d = usize::try_from(d).map_err(|_| syntax(pos, "direction out of range"))?;
                t.dir = Some((pos, d));
            }
            b'+' | b'-' => break,
            c => return Err(syntax(at, format!("unexpected '{}'", c as char))),
        }
        factors += 1;
    }
    if with_dir {
        if factors == 0 {
            return Err(syntax(lx.pos, "expected a factor"));
        }
        if t.dir.is_none() {
            return Err(syntax(term_start, "term has no direction factor D"));
        }
    }
    Ok(t)
}

fn parse_terms(src: &str, with_dir: bool) -> Result<Vec<RawTerm>> {
    let mut lx = Lexer::new(src);
    if lx.peek().is_none() {
        return Err(syntax(0, "empty expression"));
    }
    let mut out = Vec::new();
    let mut sign = false;
    loop {
        out.push(parse_term(&mut lx, sign, with_dir)?);
        match lx.bump() {
            None => break,
            Some(b'+') => sign = false,
            Some(b'-') => sign = true,
            Some(c) => return Err(syntax(lx.pos - 1, format!("unexpected '{}'", c as char))),
        }
    }
    Ok(out)
}

fn fit(slot: Option<(usize, Vec<i64>)>, len: usize, what: &str) -> Result<MultiIndex> {
    match slot {
        None => Ok(MultiIndex::zeros(len)),
        Some((_, v)) if v.len() == len => Ok(MultiIndex(v)),
        Some((pos, v)) => Err(WittError::DimensionMismatch(format!(
            "{what} factor at byte {pos} has {} indices, expected {len}",
            v.len()
        ))),
    }
}

fn is_zero_literal(src: &str) -> bool {
    let t = src.trim();
    !t.is_empty() && t.trim_start_matches(['+', '-']).chars().all(|c| c == '0')
}

/// Parses an element and checks membership in `sig`.
pub fn parse_element(src: &str, sig: &AlgebraSignature) -> Result<Element> {
    if is_zero_literal(src) {
        return Ok(Element::zero());
    }
    let mut out = Element::zero();
    for t in parse_terms(src, true)? {
        let exp = fit(t.exp, sig.n, "E")?;
        let poly = fit(t.poly, sig.total(), "X")?;
        let (_, dir) = t.dir.expect("direction checked by parser");
        let b = BasisElement { exp, poly, dir };
        sig.admits(&b)?;
        out.add_term(b, t.coeff);
    }
    Ok(out)
}

/// Parses a function `Σ c e^{γ·x} x^δ` in dimensions (n, total).
pub fn parse_function(src: &str, n: usize, total: usize) -> Result<FunctionElement> {
    if is_zero_literal(src) {
        return Ok(FunctionElement::zero());
    }
    let mut out = FunctionElement::zero();
    for t in parse_terms(src, false)? {
        let exp = fit(t.exp, n, "E")?;
        let poly = fit(t.poly, total, "X")?;
        out.add_term(FunctionTerm { exp, poly }, t.coeff);
    }
    Ok(out)
}

fn write_index(out: &mut String, tag: char, v: &MultiIndex) {
    out.push(tag);
    out.push('[');
    let parts: Vec<String> = v.0.iter().map(i64::to_string).collect();
    out.push_str(&parts.join(","));
    out.push(']');
}

pub fn format_basis(b: &BasisElement) -> String {
    let mut s = String::new();
    if b.n() > 0 {
        write_index(&mut s, 'E', &b.exp);
    }
    write_index(&mut s, 'X', &b.poly);
    write!(s, "D{}", b.dir).expect("write to string");
    s
}

pub fn format_function_term(t: &FunctionTerm) -> String {
    let mut s = String::new();
    if !t.exp.is_empty() {
        write_index(&mut s, 'E', &t.exp);
    }
    write_index(&mut s, 'X', &t.poly);
    s
}

fn format_lincomb<K: Ord + Clone>(e: &LinComb<K>, key: impl Fn(&K) -> String) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    for (idx, (k, c)) in e.iter().enumerate() {
        let shown = if idx == 0 {
            c.clone()
        } else if c.is_negative() {
            s.push_str(" - ");
            -c
        } else {
            s.push_str(" + ");
            c.clone()
        };
        if !shown.is_one() {
            write!(s, "{shown} ").expect("write to string");
        }
        s.push_str(&key(k));
    }
    s
}

/// Canonical text: descending order, unit coefficients omitted.
pub fn format_element(e: &Element) -> String {
    format_lincomb(e, format_basis)
}

pub fn format_function(f: &FunctionElement) -> String {
    format_lincomb(f, format_function_term)
}

/// JSON shape of a [`DerivationTable`]: basis keys and images as text.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct DerivationTableRecord {
    pub trunc: TruncationBox,
    pub images: BTreeMap<String, String>,
}

impl DerivationTableRecord {
    pub fn from_table(t: &DerivationTable) -> Self {
        DerivationTableRecord {
            trunc: t.trunc.clone(),
            images: t.images.iter().map(|(b, e)| (format_basis(b), format_element(e))).collect(),
        }
    }

    pub fn to_table(&self) -> Result<DerivationTable> {
        let sig = wstar10();
        let mut images = BTreeMap::new();
        for (k, v) in &self.images {
            let key = parse_element(k, &sig)?;
            let b = match key.iter().next() {
                Some((b, c)) if key.len() == 1 && c.is_one() => b.clone(),
                _ => return Err(syntax(0, format!("table key {k:?} is not a single basis element"))),
            };
            images.insert(b, parse_element(v, &sig)?);
        }
        DerivationTable::new(self.trunc.clone(), images)
    }
}
