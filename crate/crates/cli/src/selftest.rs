//! A quick invariant sweep, run by `witt-lab selftest`.

use witt_core::basis::{AlgebraSignature, BasisElement, Element, FunctionTerm};
use witt_core::bracket::{act, act_commutator, bracket, bracket_with, jacobi_defect, BracketForm};
use witt_core::derivation::{antiderivative, corrupt, decompose_derivation, derivative, reconstruct_derivation, wstar_box};
use witt_core::expr::{format_element, parse_element};
use witt_core::grading::{check_bracket_additivity, GradeScheme};
use witt_core::lincomb::rat;
use witt_core::pathological::first_jacobi_counterexample;
use witt_core::quantum_torus::{center_probe, theta_check, toral_probe, vbar_bracket_elements, vbar_jacobi, QParam, TorusWord};
use witt_core::simplicity::{diagonal_coordinate_fields, ideal_closure, is_ad_diagonal};
use witt_core::truncation::TruncationBox;
use witt_core::{FunctionElement, Result};

use crate::sample;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, outcome: Result<(bool, String)>) -> CheckResult {
    match outcome {
        Ok((passed, detail)) => CheckResult { name, passed, detail },
        Err(e) => CheckResult { name, passed: false, detail: format!("error[{}]: {e}", e.code()) },
    }
}

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    vec![
        check("bracket-oracle", oracle(seed, 300)),
        check("jacobi", jacobi(seed, 100)),
        check("literal-form-regression", literal_regression()),
        check("pathological-jacobi", pathological()),
        check("gradation", gradation()),
        check("derivation-round-trip", derivations(seed, 10)),
        check("antiderivative", antiderivatives()),
        check("ideal-closure", closures(seed, 5)),
        check("torus", torus()),
        check("quantum-torus", quantum(seed, 100)),
        check("parse-format", round_trip(seed, 100)),
    ]
}

fn oracle(seed: u64, pairs: usize) -> Result<(bool, String)> {
    let mut rng = sample::rng(seed);
    for _ in 0..pairs {
        let sig = sample::signature(&mut rng, 2);
        let (a, b) = (sample::element(&mut rng, &sig, 3, 3), sample::element(&mut rng, &sig, 3, 3));
        let br = bracket(&a, &b)?;
        for _ in 0..3 {
            let f = sample::monomial(&mut rng, sig.n, sig.total(), 3);
            if act(&br, &f)? != act_commutator(&a, &b, &f)? {
                return Ok((false, format!("{} vs {}", format_element(&a), format_element(&b))));
            }
        }
    }
    Ok((true, format!("{pairs} pairs")))
}

fn jacobi(seed: u64, triples: usize) -> Result<(bool, String)> {
    let mut rng = sample::rng(seed ^ 1);
    let sigs = [AlgebraSignature::w(1, 0), AlgebraSignature::w(2, 1), AlgebraSignature::wstar(1, 1), AlgebraSignature::wrs(1, 1, 1, 0)?];
    for sig in &sigs {
        for _ in 0..triples {
            let [a, b, c] = [0, 1, 2].map(|_| sample::element(&mut rng, sig, 3, 2));
            if !jacobi_defect(&a, &b, &c)?.is_zero() {
                return Ok((false, format!("defect in {sig}")));
            }
        }
    }
    Ok((true, format!("{triples} triples in each of {} signatures", sigs.len())))
}

/// `[x2 ∂1, x1 ∂2]` in W(0,2).
pub fn regression_pair() -> (Element, Element) {
    (Element::basis(BasisElement::new([], [0, 1], 1)), Element::basis(BasisElement::new([], [1, 0], 2)))
}

fn literal_regression() -> Result<(bool, String)> {
    let (a, b) = regression_pair();
    let f = FunctionElement::basis(FunctionTerm::new([], [1, 1]));
    let literal = act(&bracket_with(BracketForm::Literal, &a, &b)?, &f)?;
    let corrected = act(&bracket(&a, &b)?, &f)?;
    let truth = act_commutator(&a, &b, &f)?;
    Ok((literal != truth && corrected == truth, format!("literal {} vs corrected {}", format_element(&bracket_with(BracketForm::Literal, &a, &b)?), format_element(&bracket(&a, &b)?))))
}

fn pathological() -> Result<(bool, String)> {
    Ok(match first_jacobi_counterexample(2) {
        Some((t, _)) => (true, format!("first counterexample {}, {}, {}", t[0], t[1], t[2])),
        None => (false, "no counterexample with i, j <= 2".into()),
    })
}

fn gradation() -> Result<(bool, String)> {
    let mut count = 0usize;
    for sig in [AlgebraSignature::w(1, 1), AlgebraSignature::w(0, 2), AlgebraSignature::w(2, 0)] {
        let bx = TruncationBox::uniform(&sig, (-1, 1), (-1, 1))?;
        let basis = bx.basis(&sig);
        let mut schemes = vec![GradeScheme::FullZnm];
        schemes.extend((1..=sig.n).map(GradeScheme::ExpZk));
        if sig.n == 0 {
            schemes.extend((1..=sig.total()).map(GradeScheme::WittZk));
        }
        for b1 in &basis {
            for b2 in &basis {
                for &s in &schemes {
                    if check_bracket_additivity(b1, b2, s)?.is_some() {
                        return Ok((false, format!("{s} fails in {sig}")));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((true, format!("{count} pair checks")))
}

fn derivations(seed: u64, runs: usize) -> Result<(bool, String)> {
    let mut rng = sample::rng(seed ^ 2);
    let trunc = wstar_box(-2, 2, 2)?;
    for _ in 0..runs {
        let g = sample::inner_part(&mut rng);
        let (c, d) = (sample::coeff(&mut rng), sample::coeff(&mut rng));
        let table = reconstruct_derivation(&g, &c, &d, &trunc)?;
        let r = decompose_derivation(&table)?;
        if r.g != g || r.c != c || r.d != d || !r.is_exact() {
            return Ok((false, "round trip mismatch".into()));
        }
        let bad = corrupt(&table, &BasisElement::new([2], [1], 1), &BasisElement::new([0], [0], 1), &rat(1, 1))?;
        if decompose_derivation(&bad)?.is_exact() {
            return Ok((false, "corruption not detected".into()));
        }
    }
    Ok((true, format!("{runs} tables")))
}

fn antiderivatives() -> Result<(bool, String)> {
    for a in -4..=4 {
        for i in 0..=4 {
            let f = FunctionElement::basis(FunctionTerm::new([a], [i]));
            if derivative(&antiderivative(&f)?)? != f {
                return Ok((false, format!("fails on e^({a}x) x^{i}")));
            }
        }
    }
    Ok((true, "81 monomials".into()))
}

fn closures(seed: u64, runs: usize) -> Result<(bool, String)> {
    let mut rng = sample::rng(seed ^ 3);
    let sig = AlgebraSignature::w(1, 0);
    let bx = TruncationBox::uniform(&sig, (-2, 2), (0, 2))?;
    let inside = AlgebraSignature::wstar(1, 0);
    for _ in 0..runs {
        let g = sample::element(&mut rng, &inside, 2, 3);
        let c = ideal_closure(&[g], &sig, &bx, &bx)?;
        if c.report.reached_partials != vec![1] {
            return Ok((false, "W(1,0) closure missed the partial".into()));
        }
    }
    let plus = AlgebraSignature::wplus();
    let pbx = TruncationBox::uniform(&plus, (0, 3), (0, 3))?;
    let c = ideal_closure(&[Element::basis(BasisElement::new([1], [0], 1))], &plus, &pbx, &pbx)?;
    let stays = c.rows().all(|(row, _)| row.keys().all(|b| b.exp.get(0) >= 1));
    Ok((stays && c.report.reached_partials.is_empty(), format!("{runs} W(1,0) runs, W+ dimension {}", c.report.dimension)))
}

fn torus() -> Result<(bool, String)> {
    let sig = AlgebraSignature::w(1, 1);
    let bx = TruncationBox::uniform(&sig, (-2, 2), (-2, 2))?;
    let fields = diagonal_coordinate_fields(&sig, &bx)?;
    let w10 = AlgebraSignature::w(1, 0);
    let witness = is_ad_diagonal(&Element::basis(BasisElement::new([0], [1], 1)), &w10, &TruncationBox::uniform(&w10, (-2, 2), (-2, 2))?)?;
    Ok((fields == vec![2] && witness.is_some(), format!("diagonal fields {fields:?}")))
}

fn quantum(seed: u64, pairs: usize) -> Result<(bool, String)> {
    let mut rng = sample::rng(seed ^ 4);
    for q in [rat(2, 1), rat(3, 1), rat(1, 2)] {
        let q = QParam::new(q)?;
        let sampled: Vec<_> = (0..pairs).map(|_| (sample::torus_word(&mut rng, 3), sample::torus_word(&mut rng, 3))).collect();
        if !theta_check(&sampled, &q).is_empty() {
            return Ok((false, format!("theta defect at q = {q}")));
        }
        for _ in 0..pairs {
            let [a, b, c] = [0, 1, 2].map(|_| sample::torus_element(&mut rng, 3));
            if !(vbar_bracket_elements(&a, &b, &q) + vbar_bracket_elements(&b, &a, &q)).is_zero() || !vbar_jacobi(&a, &b, &c, &q).is_zero() {
                return Ok((false, format!("V̄ identity fails at q = {q}")));
            }
        }
        if center_probe(3, &q)? != vec![TorusWord::new(0, 0)] || !toral_probe(2, &q)?.is_empty() {
            return Ok((false, format!("probe mismatch at q = {q}")));
        }
    }
    Ok((true, format!("{pairs} pairs for 3 values of q")))
}

fn round_trip(seed: u64, count: usize) -> Result<(bool, String)> {
    let mut rng = sample::rng(seed ^ 5);
    for _ in 0..count {
        let sig = sample::signature(&mut rng, 2);
        let e = sample::element(&mut rng, &sig, 3, 4);
        let text = format_element(&e);
        if parse_element(&text, &sig)? != e {
            return Ok((false, text));
        }
    }
    Ok((true, format!("{count} elements")))
}
