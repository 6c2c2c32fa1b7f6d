use std::cmp::Ordering;
use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use witt_core::basis::{AlgebraSignature, BasisElement, Element};
use witt_core::bracket::{act, bracket, jacobi_defect};
use witt_core::derivation::{
    antiderivative, decompose_derivation, in_range_pairs, reconstruct_derivation, verify_leibniz, wstar10, DerivationTable,
};
use witt_core::expr::{format_basis, format_element, format_function, parse_element, parse_function, DerivationTableRecord};
use witt_core::grading::{homogeneous_components, largest_power, lex_compare, lp, split_zero_component, string_number, GradeKey, GradeScheme};
use witt_core::lincomb::Rational;
use witt_core::quantum_torus::{center_probe, theta_check, toral_probe, vbar_bracket, QParam};
use witt_core::simplicity::{diagonal_coordinate_fields, ideal_closure, is_ad_diagonal, lemma1_witness, lemma2_reach, subspace_is_ideal};
use witt_core::truncation::TruncationBox;
use witt_core::{MultiIndex, WittError};

use crate::args::{BoxArgs, Command, Elements, QtorusOp, TableArgs};
use crate::{sample, selftest, CliError, Report};

type Res<T> = std::result::Result<T, CliError>;

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Bracket { .. } => "bracket",
        Command::Act { .. } => "act",
        Command::Jacobi { .. } => "jacobi",
        Command::Grade { .. } => "grade",
        Command::Order { .. } => "order",
        Command::StringNumber { .. } => "string-number",
        Command::Lp { .. } => "lp",
        Command::SplitZero { .. } => "split-zero",
        Command::Closure { .. } => "closure",
        Command::Lemma1 { .. } => "lemma1",
        Command::Lemma2 { .. } => "lemma2",
        Command::TorusCheck { .. } => "torus-check",
        Command::IdealCheck { .. } => "ideal-check",
        Command::DeriveDecompose { .. } => "derive-decompose",
        Command::DeriveVerify { .. } => "derive-verify",
        Command::Antideriv { .. } => "antideriv",
        Command::Qtorus { op } => match op {
            QtorusOp::Bracket { .. } => "qtorus-bracket",
            QtorusOp::Theta { .. } => "qtorus-theta",
            QtorusOp::Center { .. } => "qtorus-center",
            QtorusOp::Toral { .. } => "qtorus-toral",
        },
        Command::Selftest { .. } => "selftest",
    }
}

fn sig_of(src: &str) -> Res<AlgebraSignature> {
    src.parse().map_err(|e: WittError| CliError::Usage(e.to_string()))
}

fn read_lines(path: &Path) -> Res<Vec<String>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn elements(src: &Elements, sig: &AlgebraSignature) -> Res<Vec<Element>> {
    let mut texts = src.items.clone();
    if let Some(path) = &src.file {
        texts.extend(read_lines(path)?);
    }
    texts.iter().map(|t| Ok(parse_element(t, sig)?)).collect()
}

fn exactly<const N: usize>(es: Vec<Element>, what: &str) -> Res<[Element; N]> {
    let got = es.len();
    es.try_into().map_err(|_| CliError::Usage(format!("{what} takes {N} elements, got {got}")))
}

fn single_basis(e: &Element) -> Res<BasisElement> {
    match e.iter().next() {
        Some((b, c)) if e.len() == 1 && *c == Rational::from_integer(1.into()) => Ok(b.clone()),
        _ => Err(CliError::Usage(format!("expected a single basis element, got {}", format_element(e)))),
    }
}

fn range(src: &str) -> Res<(i64, i64)> {
    let bad = || CliError::Usage(format!("range {src:?} is not lo:hi"));
    let (lo, hi) = src.split_once(':').ok_or_else(bad)?;
    Ok((lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?))
}

fn ranges(flags: &[String], count: usize, default: (i64, i64), what: &str) -> Res<Vec<(i64, i64)>> {
    match flags.len() {
        0 => Ok(vec![default; count]),
        1 => Ok(vec![range(&flags[0])?; count]),
        k if k == count => flags.iter().map(|f| range(f)).collect(),
        k => Err(CliError::Usage(format!("{what} given {k} times, expected 1 or {count}"))),
    }
}

fn truncation(bx: &BoxArgs, sig: &AlgebraSignature) -> Res<TruncationBox> {
    let exp = ranges(&bx.exp_box, sig.n, (-2, 2), "--exp-box")?;
    let poly = ranges(&bx.poly_box, sig.total(), (0, 2), "--poly-box")?;
    TruncationBox::new(exp, poly).map_err(|e| CliError::Usage(e.to_string()))
}

fn rational(src: &str) -> Res<Rational> {
    src.trim().parse().map_err(|_| CliError::Usage(format!("{src:?} is not a rational number")))
}

fn qparam(src: &str) -> Res<QParam> {
    Ok(QParam::new(rational(src)?)?)
}

fn box_json(bx: &TruncationBox) -> Value {
    json!({ "exp": bx.exp, "poly": bx.poly })
}

fn box_text(bx: &TruncationBox) -> String {
    let show = |r: &[(i64, i64)]| r.iter().map(|(lo, hi)| format!("[{lo},{hi}]")).collect::<Vec<_>>().join("x");
    format!("exp {} poly {}", show(&bx.exp), show(&bx.poly))
}

fn report(command: &'static str, sig: Option<&AlgebraSignature>, text: String, json: Value) -> Report {
    Report { command, signature: sig.map(|s| s.to_string()), text, json }
}

fn element_report(command: &'static str, sig: &AlgebraSignature, e: &Element) -> Report {
    let s = format_element(e);
    report(command, Some(sig), s.clone(), json!(s))
}

pub fn execute(cmd: Command) -> Res<(Report, i32)> {
    let ok = |r: Report| Ok((r, 0));
    match cmd {
        Command::Bracket { sig, elements: els } => {
            let sig = sig_of(&sig.sig)?;
            let [a, b] = exactly(elements(&els, &sig)?, "bracket")?;
            ok(element_report("bracket", &sig, &bracket(&a, &b)?))
        }
        Command::Act { sig, element, function } => {
            let sig = sig_of(&sig.sig)?;
            let e = parse_element(&element, &sig)?;
            let f = parse_function(&function, sig.n, sig.total())?;
            let s = format_function(&act(&e, &f)?);
            ok(report("act", Some(&sig), s.clone(), json!(s)))
        }
        Command::Jacobi { sig, elements: els } => {
            let sig = sig_of(&sig.sig)?;
            let [a, b, c] = exactly(elements(&els, &sig)?, "jacobi")?;
            ok(element_report("jacobi", &sig, &jacobi_defect(&a, &b, &c)?))
        }
        Command::Grade { sig, scheme, element } => {
            let sig = sig_of(&sig.sig)?;
            let scheme: GradeScheme = scheme.parse().map_err(|e: WittError| CliError::Usage(e.to_string()))?;
            let e = parse_element(&element, &sig)?;
            let comps = homogeneous_components(&e, scheme)?;
            let text = comps.iter().rev().map(|(k, v)| format!("{}: {}", k, format_element(v))).collect::<Vec<_>>().join("\n");
            let js: Vec<Value> = comps.iter().rev().map(|(k, v)| json!({ "key": k.0 .0, "element": format_element(v) })).collect();
            ok(report("grade", Some(&sig), if text.is_empty() { "0".into() } else { text }, json!({ "scheme": scheme.to_string(), "components": js })))
        }
        Command::Order { sig, left, right } => {
            let sig = sig_of(&sig.sig)?;
            let l = single_basis(&parse_element(&left, &sig)?)?;
            let r = single_basis(&parse_element(&right, &sig)?)?;
            let word = match lex_compare(&l, &r)? {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            };
            ok(report("order", Some(&sig), word.into(), json!(word)))
        }
        Command::StringNumber { sig, element } => {
            let sig = sig_of(&sig.sig)?;
            let st = string_number(&parse_element(&element, &sig)?);
            ok(report("string-number", Some(&sig), st.to_string(), json!(st)))
        }
        Command::Lp { sig, alpha, u, element } => {
            let sig = sig_of(&sig.sig)?;
            let e = parse_element(&element, &sig)?;
            let alpha = alpha
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad --alpha entry {s:?}"))))
                .collect::<Res<Vec<_>>>()?;
            let alpha = GradeKey(MultiIndex(alpha));
            let p = match u {
                Some(u) => largest_power(&e, &alpha, u)?,
                None => lp(&e, &alpha)?,
            };
            ok(report("lp", Some(&sig), p.to_string(), json!(p)))
        }
        Command::SplitZero { sig, element } => {
            let sig = sig_of(&sig.sig)?;
            let (w, a) = split_zero_component(&parse_element(&element, &sig)?)?;
            let (w, a) = (format_element(&w), format_element(&a));
            ok(report("split-zero", Some(&sig), format!("witt: {w}\nabelian: {a}"), json!({ "witt": w, "abelian": a })))
        }
        Command::Closure { sig, bx, elements: els } => {
            let sig = sig_of(&sig.sig)?;
            let bx = truncation(&bx, &sig)?;
            let gens = elements(&els, &sig)?;
            let closure = ideal_closure(&gens, &sig, &bx, &bx)?;
            let replay = closure.replay(&gens)?;
            let r = &closure.report;
            let partials = if r.reached_partials.is_empty() {
                "none".to_string()
            } else {
                r.reached_partials.iter().map(|d| format!("D{d}")).collect::<Vec<_>>().join(", ")
            };
            let text = format!(
                "box: {}\ndimension: {}\nreached partials: {partials}\ngenerators used: {}\noverflow discards: {}\nreplay: {}",
                box_text(&bx),
                r.dimension,
                r.generators_used,
                r.overflow_discards,
                if replay { "ok" } else { "mismatch" }
            );
            let js = json!({
                "box": box_json(&bx),
                "dimension": r.dimension,
                "reached_partials": r.reached_partials,
                "generators_used": r.generators_used,
                "overflow_discards": r.overflow_discards,
                "replay_ok": replay,
            });
            ok(report("closure", Some(&sig), text, js))
        }
        Command::Lemma1 { sig, element } => {
            let sig = sig_of(&sig.sig)?;
            let w = lemma1_witness(&parse_element(&element, &sig)?)?;
            let (s, l) = (format_basis(&w.s), format_element(&w.lprime));
            ok(report("lemma1", Some(&sig), format!("s: {s}\nlprime: {l}"), json!({ "s": s, "lprime": l })))
        }
        Command::Lemma2 { sig, start_dir, target } => {
            let sig = sig_of(&sig.sig)?;
            let t = single_basis(&parse_element(&target, &sig)?)?;
            let recipe = lemma2_reach(&t, start_dir)?;
            let verified = recipe.verify()?;
            let steps: Vec<String> = recipe
                .steps
                .iter()
                .map(|s| format!("{} [{}, {}]", s.weight, format_basis(&s.left), format_basis(&s.right)))
                .collect();
            let text = format!(
                "u: {}\ncase: {:?}\nsteps: {}\nresult: {} {}\nverified: {verified}",
                recipe.u,
                recipe.case,
                steps.join(" + "),
                recipe.multiple,
                format_basis(&recipe.target)
            );
            let js = json!({
                "u": recipe.u,
                "case": format!("{:?}", recipe.case),
                "steps": steps,
                "multiple": recipe.multiple.to_string(),
                "target": format_basis(&recipe.target),
                "verified": verified,
            });
            ok(report("lemma2", Some(&sig), text, js))
        }
        Command::TorusCheck { sig, bx, candidate } => {
            let sig = sig_of(&sig.sig)?;
            let bx = truncation(&bx, &sig)?;
            match candidate {
                Some(c) => {
                    let e = parse_element(&c, &sig)?;
                    match is_ad_diagonal(&e, &sig, &bx)? {
                        None => ok(report("torus-check", Some(&sig), "diagonal".into(), json!({ "diagonal": true }))),
                        Some(w) => {
                            let (b, v) = (format_basis(&w.basis), format_element(&w.value));
                            let text = format!("not diagonal\nwitness: {b}\n[candidate, witness] = {v}");
                            ok(report("torus-check", Some(&sig), text, json!({ "diagonal": false, "witness": b, "value": v })))
                        }
                    }
                }
                None => {
                    let fields = diagonal_coordinate_fields(&sig, &bx)?;
                    let shown: Vec<String> = fields.iter().map(|t| format!("x{t}D{t}")).collect();
                    let text = if shown.is_empty() { "diagonal fields: none".into() } else { format!("diagonal fields: {}", shown.join(", ")) };
                    ok(report("torus-check", Some(&sig), text, json!({ "diagonal_fields": fields })))
                }
            }
        }
        Command::IdealCheck { sig, bx, pred } => {
            let sig = sig_of(&sig.sig)?;
            let bx = truncation(&bx, &sig)?;
            let pred_fn = predicate(&pred, &sig)?;
            match subspace_is_ideal(pred_fn, &sig, &bx)? {
                None => ok(report("ideal-check", Some(&sig), "ideal".into(), json!({ "ideal": true }))),
                Some(w) => {
                    let (p, q, v) = (format_basis(&w.p), format_basis(&w.q), format_element(&w.value));
                    let text = format!("not an ideal\n[{p}, {q}] = {v}\noffending term: {}", format_basis(&w.offending));
                    ok(report("ideal-check", Some(&sig), text, json!({ "ideal": false, "p": p, "q": q, "value": v, "offending": format_basis(&w.offending) })))
                }
            }
        }
        Command::DeriveDecompose { table } => {
            let sig = wstar10();
            let t = derivation_table(&table)?;
            if table.emit_table {
                return ok(table_report("derive-decompose", &t));
            }
            let r = decompose_derivation(&t)?;
            let text = format!(
                "g: {}\nc: {}\nd: {}\nlemma slope: {}\nresidual: {}\nchecked: {}",
                format_function(&r.g),
                r.c,
                r.d,
                r.lemma_slope,
                r.residual,
                box_text(&r.checked)
            );
            let js = json!({
                "g": format_function(&r.g),
                "c": r.c.to_string(),
                "d": r.d.to_string(),
                "lemma_slope": r.lemma_slope.to_string(),
                "residual": r.residual.to_string(),
                "exact": r.is_exact(),
                "checked": box_json(&r.checked),
            });
            ok(report("derive-decompose", Some(&sig), text, js))
        }
        Command::DeriveVerify { table } => {
            let sig = wstar10();
            let t = derivation_table(&table)?;
            if table.emit_table {
                return ok(table_report("derive-verify", &t));
            }
            let pairs = in_range_pairs(&t.trunc)?;
            let defects = verify_leibniz(&t, &pairs)?;
            let mut text = format!("pairs checked: {}\ndefects: {}", pairs.len(), defects.len());
            let listed: Vec<Value> = defects
                .iter()
                .map(|d| {
                    let (l1, l2) = &pairs[d.index];
                    json!({ "left": format_element(l1), "right": format_element(l2), "defect": format_element(&d.defect) })
                })
                .collect();
            for d in defects.iter().take(5) {
                let (l1, l2) = &pairs[d.index];
                text.push_str(&format!("\n  [{}, {}]: {}", format_element(l1), format_element(l2), format_element(&d.defect)));
            }
            ok(report("derive-verify", Some(&sig), text, json!({ "pairs": pairs.len(), "defects": listed })))
        }
        Command::Antideriv { function } => {
            let f = parse_function(&function, 1, 1)?;
            let s = format_function(&antiderivative(&f)?);
            ok(report("antideriv", Some(&wstar10()), s.clone(), json!(s)))
        }
        Command::Qtorus { op } => qtorus(op).map(|r| (r, 0)),
        Command::Selftest { seed } => {
            let results = selftest::run_all(seed);
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut text: Vec<String> = results
                .iter()
                .map(|r| format!("{} {}: {}", if r.passed { "pass" } else { "FAIL" }, r.name, r.detail))
                .collect();
            text.push(format!("selftest: {} passed, {failed} failed", results.len() - failed));
            let js = json!({
                "passed": results.len() - failed,
                "failed": failed,
                "checks": results.iter().map(|r| json!({ "name": r.name, "passed": r.passed, "detail": r.detail })).collect::<Vec<_>>(),
            });
            Ok((report("selftest", None, text.join("\n"), js), i32::from(failed > 0)))
        }
    }
}

type Predicate = Box<dyn Fn(&BasisElement) -> bool>;

fn predicate(src: &str, sig: &AlgebraSignature) -> Res<Predicate> {
    let bad = || CliError::Usage(format!("predicate {src:?} is not exp:k>=m, poly:k>=m or all"));
    if src.trim() == "all" {
        return Ok(Box::new(|_| true));
    }
    let (kind, rest) = src.split_once(':').ok_or_else(bad)?;
    let (k, m) = rest.split_once(">=").ok_or_else(bad)?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    let m: i64 = m.trim().parse().map_err(|_| bad())?;
    match kind.trim() {
        "exp" if (1..=sig.n).contains(&k) => Ok(Box::new(move |b| b.exp.get(k - 1) >= m)),
        "poly" if (1..=sig.total()).contains(&k) => Ok(Box::new(move |b| b.poly.get(k - 1) >= m)),
        _ => Err(bad()),
    }
}

fn derivation_table(args: &TableArgs) -> Res<DerivationTable> {
    if let Some(path) = &args.table {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let record: DerivationTableRecord =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return Ok(record.to_table()?);
    }
    let sig = wstar10();
    let bx = truncation(&args.bx, &sig)?;
    let g = parse_function(args.g.as_deref().unwrap_or("0"), 1, 1)?;
    let c = rational(args.c.as_deref().unwrap_or("0"))?;
    let d = rational(args.d.as_deref().unwrap_or("0"))?;
    Ok(reconstruct_derivation(&g, &c, &d, &bx)?)
}

fn table_report(command: &'static str, t: &DerivationTable) -> Report {
    let record = DerivationTableRecord::from_table(t);
    let js = serde_json::to_value(&record).expect("serializable");
    let text = serde_json::to_string_pretty(&record).expect("serializable");
    report(command, Some(&wstar10()), text, js)
}

fn qtorus(op: QtorusOp) -> Res<Report> {
    match op {
        QtorusOp::Bracket { q, a, i, b, j } => {
            let q = qparam(&q.q)?;
            let (k, w) = vbar_bracket(a, i, b, j, &q);
            let text = format!("{k} * {w}");
            Ok(report("qtorus-bracket", None, text, json!({ "q": q.to_string(), "coefficient": k.to_string(), "pair": [w.i, w.j] })))
        }
        QtorusOp::Theta { q, pairs, bound, seed } => {
            let q = qparam(&q.q)?;
            let mut rng = sample::rng(seed);
            let sampled: Vec<_> = (0..pairs).map(|_| (sample::torus_word(&mut rng, bound), sample::torus_word(&mut rng, bound))).collect();
            let defects = theta_check(&sampled, &q);
            let mut text = format!("pairs: {pairs}\ndefects: {}", defects.len());
            for d in defects.iter().take(5) {
                text.push_str(&format!("\n  {} {}: {} vs {}", d.left, d.right, d.via_words, d.via_vbar));
            }
            Ok(report("qtorus-theta", None, text, json!({ "q": q.to_string(), "pairs": pairs, "defects": defects })))
        }
        QtorusOp::Center { q, bound } => {
            let q = qparam(&q.q)?;
            let words = center_probe(bound, &q)?;
            let shown: Vec<String> = words.iter().map(ToString::to_string).collect();
            Ok(report("qtorus-center", None, shown.join("\n"), json!({ "q": q.to_string(), "bound": bound, "center": words })))
        }
        QtorusOp::Toral { q, bound } => {
            let q = qparam(&q.q)?;
            let words = toral_probe(bound, &q)?;
            let shown: Vec<String> = words.iter().map(ToString::to_string).collect();
            let text = if shown.is_empty() { "none".into() } else { shown.join("\n") };
            Ok(report("qtorus-toral", None, text, json!({ "q": q.to_string(), "bound": bound, "toral": words })))
        }
    }
}
