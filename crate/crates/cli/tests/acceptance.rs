//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::Rng;
use witt_cli::sample;
use witt_core::basis::{AlgebraSignature, BasisElement, Element, FunctionElement, FunctionTerm, MultiIndex};
use witt_core::bracket::{act, act_commutator, bracket, bracket_with, jacobi_defect, BracketForm};
use witt_core::derivation::{
    antiderivative, corrupt, decompose_derivation, derivative, lemma4_closed_form, reconstruct_derivation, times_partial,
    wstar10, wstar_box,
};
use witt_core::expr::{format_element, parse_element};
use witt_core::grading::{check_bracket_additivity, GradeScheme};
use witt_core::lincomb::rat;
use witt_core::pathological::first_jacobi_counterexample;
use witt_core::quantum_torus::{
    center_probe, theta_check, theta_check_with, toral_probe, vbar_bracket_elements, vbar_jacobi, QParam, TorusWord,
};
use witt_core::simplicity::{ideal_closure, is_ad_diagonal, subspace_is_ideal};
use witt_core::truncation::TruncationBox;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: witt_core::WittError) -> String {
    format!("error[{}]: {e}", e.code())
}

fn criterion_1() -> Outcome {
    let mut rng = sample::rng(101);
    let mut probes = 0;
    for k in 0..2000 {
        let sig = sample::signature(&mut rng, 2);
        let a = sample::element(&mut rng, &sig, 3, 3);
        let b = sample::element(&mut rng, &sig, 3, 3);
        let br = bracket(&a, &b).map_err(err)?;
        for _ in 0..5 {
            let f = sample::monomial(&mut rng, sig.n, sig.total(), 3);
            let lhs = act(&br, &f).map_err(err)?;
            let rhs = act_commutator(&a, &b, &f).map_err(err)?;
            ensure(lhs == rhs, || format!("pair {k} in {sig}: {} , {}", format_element(&a), format_element(&b)))?;
            probes += 1;
        }
    }
    Ok(format!("2000 pairs, {probes} probes, all exact"))
}

fn criterion_2() -> Outcome {
    let mut rng = sample::rng(202);
    let sigs = [
        AlgebraSignature::w(1, 0),
        AlgebraSignature::w(2, 1),
        AlgebraSignature::wstar(1, 1),
        AlgebraSignature::wrs(1, 1, 1, 0).map_err(err)?,
    ];
    for sig in &sigs {
        for k in 0..1000 {
            let [a, b, c] = [0, 1, 2].map(|_| sample::element(&mut rng, sig, 3, 3));
            let d = jacobi_defect(&a, &b, &c).map_err(err)?;
            ensure(d.is_zero(), || format!("triple {k} in {sig} has defect {}", format_element(&d)))?;
        }
    }

    let x2d1 = Element::basis(BasisElement::new([], [0, 1], 1));
    let x1d2 = Element::basis(BasisElement::new([], [1, 0], 2));
    let literal = bracket_with(BracketForm::Literal, &x2d1, &x1d2).map_err(err)?;
    let corrected = bracket(&x2d1, &x1d2).map_err(err)?;
    let mut literal_fails = false;
    for (i, j) in [(1, 0), (0, 1), (1, 1)] {
        let f = FunctionElement::basis(FunctionTerm::new([], [i, j]));
        let truth = act_commutator(&x2d1, &x1d2, &f).map_err(err)?;
        ensure(act(&corrected, &f).map_err(err)? == truth, || "corrected form disagrees with the oracle".into())?;
        literal_fails |= act(&literal, &f).map_err(err)? != truth;
    }
    ensure(literal_fails, || "literal form agrees with the oracle on the regression pair".into())?;

    let (t, defect) = first_jacobi_counterexample(2).ok_or("no pathological counterexample with i, j <= 2")?;
    println!("    pathological counterexample: [{}], [{}], [{}]", t[0], t[1], t[2]);
    let defect: Vec<String> = defect.iter().map(|(p, c)| format!("{c}·{p}")).collect();
    println!("    defect: {}", defect.join(" + "));
    println!(
        "    regression [x2 D1, x1 D2]: literal {} | corrected {}",
        format_element(&literal),
        format_element(&corrected)
    );
    Ok("4000 triples with zero defect; literal form refuted; pathological bracket breaks Jacobi".into())
}

fn schemes(sig: &AlgebraSignature) -> Vec<GradeScheme> {
    let mut s = vec![GradeScheme::FullZnm];
    s.extend((1..=sig.n).map(GradeScheme::ExpZk));
    if sig.n == 0 {
        s.extend((1..=sig.total()).map(GradeScheme::WittZk));
    }
    s
}

fn additivity(b1: &BasisElement, b2: &BasisElement, schemes: &[GradeScheme]) -> Result<(), String> {
    for &s in schemes {
        if let Some(bad) = check_bracket_additivity(b1, b2, s).map_err(err)? {
            return Err(format!("{s}: [{b1:?}, {b2:?}] has off-degree term {bad:?}"));
        }
    }
    Ok(())
}

/// Exhaustive where the pair count is desk-sized; sampled from the full
/// [-2,2] box otherwise.
fn criterion_3() -> Outcome {
    let mut pairs = 0u64;
    let mut exhaustive = Vec::new();
    for (sig, r) in [
        (AlgebraSignature::w(1, 0), 2),
        (AlgebraSignature::w(0, 1), 2),
        (AlgebraSignature::w(1, 1), 2),
        (AlgebraSignature::w(2, 0), 2),
        (AlgebraSignature::w(0, 2), 2),
        (AlgebraSignature::w(0, 3), 1),
        (AlgebraSignature::w(1, 2), 1),
        (AlgebraSignature::w(2, 1), 1),
    ] {
        let bx = TruncationBox::uniform(&sig, (-r, r), (-r, r)).map_err(err)?;
        let basis = bx.basis(&sig);
        let sch = schemes(&sig);
        for b1 in &basis {
            for b2 in &basis {
                additivity(b1, b2, &sch)?;
                pairs += 1;
            }
        }
        exhaustive.push(format!("{sig}[-{r},{r}]"));
    }
    let mut rng = sample::rng(303);
    let sampled = [AlgebraSignature::w(3, 0), AlgebraSignature::w(2, 2), AlgebraSignature::w(1, 3), AlgebraSignature::w(0, 4)];
    for sig in &sampled {
        let sch = schemes(sig);
        for _ in 0..200_000 {
            additivity(&sample::basis(&mut rng, sig, 2), &sample::basis(&mut rng, sig, 2), &sch)?;
            pairs += 1;
        }
    }
    println!("    exhaustive: {}", exhaustive.join(", "));
    println!("    sampled 200000 pairs from [-2,2] in: {}", sampled.map(|s| s.to_string()).join(", "));
    Ok(format!("{pairs} pairs, every bracket term in the summed degree"))
}

fn criterion_4() -> Outcome {
    let mut rng = sample::rng(404);
    let trunc = wstar_box(-2, 2, 2).map_err(err)?;
    let basis = trunc.basis(&wstar10());
    let mut lemma_checks = 0;
    for run in 0..50 {
        let g = sample::inner_part(&mut rng);
        let (c, d) = (sample::coeff(&mut rng), sample::coeff(&mut rng));
        let table = reconstruct_derivation(&g, &c, &d, &trunc).map_err(err)?;
        let r = decompose_derivation(&table).map_err(err)?;
        ensure(r.g == g && r.c == c && r.d == d, || format!("run {run}: recovered different parameters"))?;
        ensure(r.is_exact(), || format!("run {run}: residual {}", r.residual))?;

        let g_partial = times_partial(&g);
        let slope = &c + &d;
        for b in &basis {
            let e = Element::basis(b.clone());
            let reduced = table.apply(&e).map_err(err)? - bracket(&g_partial, &e).map_err(err)?;
            ensure(reduced == lemma4_closed_form(b, &c, &slope), || format!("run {run}: closed form fails at {b:?}"))?;
            lemma_checks += 1;
        }

        let at = basis[rng.gen_range(0..basis.len())].clone();
        let extra = BasisElement::new([rng.gen_range(-3..=3)], [rng.gen_range(0..=3)], 1);
        let bad = corrupt(&table, &at, &extra, &sample::coeff(&mut rng)).map_err(err)?;
        let rb = decompose_derivation(&bad).map_err(err)?;
        ensure(!rb.is_exact(), || format!("run {run}: corruption at {at:?} by {extra:?} not detected"))?;
    }
    Ok(format!("50 round trips exact, 50 corruptions detected, closed form on {lemma_checks} basis images"))
}

fn criterion_5() -> Outcome {
    for a in -4..=4 {
        for i in 0..=4 {
            let f = FunctionElement::basis(FunctionTerm::new([a], [i]));
            let back = derivative(&antiderivative(&f).map_err(err)?).map_err(err)?;
            ensure(back == f, || format!("e^({a}x) x^{i}"))?;
        }
    }
    Ok("81 monomials".into())
}

fn criterion_6() -> Outcome {
    let mut rng = sample::rng(606);
    let sig = AlgebraSignature::w(1, 0);
    let bx = TruncationBox::uniform(&sig, (-2, 2), (0, 2)).map_err(err)?;
    let support = bx.basis(&sig);
    let partial = Element::basis(BasisElement::partial(1, 1, 1));
    for run in 0..20 {
        let g: Element = loop {
            let k = rng.gen_range(1..=3);
            let e: Element = (0..k).map(|_| (support[rng.gen_range(0..support.len())].clone(), sample::coeff(&mut rng))).collect();
            if !e.is_zero() {
                break e;
            }
        };
        let c = ideal_closure(std::slice::from_ref(&g), &sig, &bx, &bx).map_err(err)?;
        ensure(c.contains(&partial), || format!("run {run}: closure of {} misses ∂", format_element(&g)))?;
        ensure(c.replay(&[g]).map_err(err)?, || format!("run {run}: trace does not replay"))?;
    }

    let plus = AlgebraSignature::wplus();
    let pbx = TruncationBox::uniform(&plus, (0, 3), (0, 3)).map_err(err)?;
    let gen = Element::basis(BasisElement::new([1], [0], 1));
    let c = ideal_closure(&[gen], &plus, &pbx, &pbx).map_err(err)?;
    ensure(!c.contains(&partial), || "W+ closure of e^x∂ reached ∂".into())?;
    ensure(c.rows().all(|(row, _)| row.keys().all(|b| b.exp.get(0) >= 1)), || "W+ closure left I_1".into())?;

    for m in [1, 2] {
        let w = subspace_is_ideal(|b: &BasisElement| b.exp.get(0) >= m, &plus, &pbx).map_err(err)?;
        ensure(w.is_none(), || format!("I_{m} is not closed: {w:?}"))?;
    }
    let control = subspace_is_ideal(|b: &BasisElement| b.poly.get(0) >= 1, &plus, &pbx).map_err(err)?;
    ensure(control.is_some(), || "control subspace x·W+ wrongly accepted as an ideal".into())?;
    Ok(format!("20/20 W(1,0) closures reach ∂; W+ closure has dimension {} inside I_1; I_1, I_2 are ideals", c.report.dimension))
}

fn coordinate_field(sig: &AlgebraSignature, t: usize) -> Element {
    Element::basis(BasisElement { exp: MultiIndex::zeros(sig.n), poly: MultiIndex::unit(sig.total(), t - 1), dir: t })
}

fn criterion_7() -> Outcome {
    for sig in [AlgebraSignature::w(1, 1), AlgebraSignature::w(1, 2)] {
        let bx = TruncationBox::uniform(&sig, (-2, 2), (-2, 2)).map_err(err)?;
        for t in sig.n + 1..=sig.total() {
            let w = is_ad_diagonal(&coordinate_field(&sig, t), &sig, &bx).map_err(err)?;
            ensure(w.is_none(), || format!("x{t}∂{t} rejected in {sig}: {w:?}"))?;
        }
        let w = is_ad_diagonal(&coordinate_field(&sig, 1), &sig, &bx).map_err(err)?;
        ensure(w.is_some(), || format!("x1∂1 accepted in {sig}"))?;
    }
    let sig = AlgebraSignature::w(1, 0);
    let bx = TruncationBox::uniform(&sig, (-2, 2), (-2, 2)).map_err(err)?;
    let xd = coordinate_field(&sig, 1);
    let w = is_ad_diagonal(&xd, &sig, &bx).map_err(err)?.ok_or("x∂ accepted in W(1,0)")?;
    let expected = parse_element("E[-1]X[0]D1 + E[-1]X[1]D1", &sig).map_err(err)?;
    let reproduced = bracket(&Element::basis(w.basis.clone()), &xd).map_err(err)?;
    ensure(reproduced == expected, || format!("witness bracket {} differs", format_element(&reproduced)))?;
    println!("    witness: [{}, x∂] = {}", format_element(&Element::basis(w.basis)), format_element(&reproduced));
    Ok("coordinate fields x_t∂_t (t > n) diagonal in W(1,1), W(1,2); x∂ rejected in W(1,0)".into())
}

fn criterion_8() -> Outcome {
    let mut rng = sample::rng(808);
    for q in [rat(2, 1), rat(3, 1), rat(1, 2)] {
        let q = QParam::new(q).map_err(err)?;
        let pairs: Vec<_> = (0..500).map(|_| (sample::torus_word(&mut rng, 3), sample::torus_word(&mut rng, 3))).collect();
        let defects = theta_check(&pairs, &q);
        ensure(defects.is_empty(), || format!("q = {q}: {} theta defects", defects.len()))?;
        ensure(!theta_check_with(|w| TorusWord::new(w.j, w.i), &pairs, &q).is_empty(), || format!("q = {q}: swapped map not caught"))?;
        let center = center_probe(3, &q).map_err(err)?;
        ensure(center == vec![TorusWord::new(0, 0)], || format!("q = {q}: center {center:?}"))?;
        let toral = toral_probe(2, &q).map_err(err)?;
        ensure(toral.is_empty(), || format!("q = {q}: toral {toral:?}"))?;
        for k in 0..500 {
            let [a, b, c] = [0, 1, 2].map(|_| sample::torus_element(&mut rng, 3));
            let anti = vbar_bracket_elements(&a, &b, &q) + vbar_bracket_elements(&b, &a, &q);
            ensure(anti.is_zero(), || format!("q = {q}: antisymmetry fails on triple {k}"))?;
            ensure(vbar_jacobi(&a, &b, &c, &q).is_zero(), || format!("q = {q}: Jacobi fails on triple {k}"))?;
        }
    }
    Ok("q in {2, 3, 1/2}: theta exact on 500 pairs, center [(0,0)], no toral words, V̄ identities on 500 triples".into())
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn run_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_witt-lab")).args(args).output().expect("spawn witt-lab")
}

fn criterion_9() -> Outcome {
    let mut rng = sample::rng(909);
    for k in 0..200 {
        let sig = sample::signature(&mut rng, 2);
        let e = sample::element(&mut rng, &sig, 3, 4);
        let text = format_element(&e);
        let back = parse_element(&text, &sig).map_err(err)?;
        ensure(back == e, || format!("element {k}: {text}"))?;
        ensure(format_element(&back) == text, || format!("element {k}: format not stable"))?;
    }

    let cases: [(&[&str], &str); 3] = [
        (&["bracket", "--sig", "W:1,0", "E[0]X[0]D1", "E[0]X[1]D1"], "bracket.txt"),
        (&["string-number", "--sig", "W:1,0", "E[1]X[0]D1 + E[2]X[1]D1 + E[2]X[0]D1"], "string_number.txt"),
        (&["qtorus", "bracket", "--q", "2", "1", "0", "0", "1"], "qtorus_bracket.txt"),
    ];
    for (args, file) in cases {
        let out = run_bin(args);
        ensure(out.status.success(), || format!("{args:?} exited with {}", out.status))?;
        ensure(out.stdout == golden(file).as_bytes(), || format!("{args:?} printed {:?}", String::from_utf8_lossy(&out.stdout)))?;
    }

    let out = run_bin(&["selftest"]);
    ensure(out.status.success(), || format!("selftest failed:\n{}", String::from_utf8_lossy(&out.stdout)))?;
    Ok("200 round trips, 3 golden outputs byte-identical, selftest exit 0".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("bracket oracle equivalence", criterion_1),
        ("Jacobi suite", criterion_2),
        ("gradation compatibility", criterion_3),
        ("derivation round trip", criterion_4),
        ("antiderivative", criterion_5),
        ("ideal closure evidence", criterion_6),
        ("torus checks", criterion_7),
        ("quantum torus", criterion_8),
        ("CLI", criterion_9),
    ];
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} {title}: PASS ({secs:.1}s) {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {title}: FAIL ({secs:.1}s) {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
