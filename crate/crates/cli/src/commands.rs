use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use ratcrit::criterion::profile::power_coefficients;
use ratcrit::criterion::{
    check_criterion, hankel_rank_profile, lemma_identity_suite, plateau_verdict, windowed_profile, CriterionReport,
    Quadruple, QuadrupleError, Verdict,
};
use ratcrit::fredholm::Label;
use ratcrit::freegroup::reduce;
use ratcrit::rational::{expand_exact, expand_numeric, parse, to_element, SeriesTruncation};
use ratcrit::scalar::{format_gaussian, gaussian_ratio, lift};
use ratcrit::{Complex64, Element, ExactComplex, GeneratorSet, Scalar, StarConvention};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::series::resolve;
use crate::{Format, GlobalOpts};

fn group(opts: &GlobalOpts, default_rank: usize) -> Result<GeneratorSet, CliError> {
    match &opts.group {
        Some(text) => Ok(GeneratorSet::parse(text)?),
        None => Ok(GeneratorSet::standard(default_rank)),
    }
}

fn group_name(gens: &GeneratorSet) -> String {
    format!("F({})", gens.names().join(","))
}

fn element(gens: &GeneratorSet, text: &str) -> Result<Element, CliError> {
    Ok(to_element(&parse(text, gens)?)?)
}

fn labels(gens: &GeneratorSet, ls: &[Label]) -> Vec<String> {
    ls.iter().map(|l| l.format(gens)).collect()
}

fn to_json_string(v: &Value) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn row(out: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(out, "{key:<16}{value}");
}

fn criterion_json(gens: &GeneratorSet, r: &CriterionReport<ExactComplex>) -> Value {
    json!({
        "identity_holds": r.identity_holds,
        "convention": r.convention.name(),
        "rank_p": r.rank_p,
        "rank_p_inv": r.rank_p_inv,
        "rank_f": r.rank_f,
        "certified": r.certified,
        "witnesses_p": labels(gens, &r.witnesses_p),
        "witnesses_p_inv": labels(gens, &r.witnesses_p_inv),
        "p_block": r.defects.p_block.to_json(gens),
        "p_inv_block": r.defects.p_inv_block.to_json(gens),
    })
}

fn criterion_text(out: &mut String, gens: &GeneratorSet, r: &CriterionReport<ExactComplex>) {
    row(out, "identity", if r.identity_holds { "a·t = s·b" } else { "violated" });
    row(out, "rank_P", r.rank_p);
    row(out, "rank_P^-1", r.rank_p_inv);
    row(out, "rank_F", r.rank_f);
    row(out, "certified", r.certified);
    row(out, "witnesses_P", labels(gens, &r.witnesses_p).join(" "));
    row(out, "witnesses_P^-1", labels(gens, &r.witnesses_p_inv).join(" "));
}

pub fn commutator_rank(opts: &GlobalOpts, elem: &str) -> Result<String, CliError> {
    let gens = group(opts, 2)?;
    let conv = StarConvention::from(opts.star_convention);
    let a = element(&gens, elem)?;
    let q = Quadruple::new(a.clone(), a.clone(), Element::one(), Element::one())
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let r = check_criterion(&gens, &q, conv)?;
    match opts.format {
        Format::Json => {
            let mut v = criterion_json(&gens, &r);
            v["group"] = json!(group_name(&gens));
            v["element"] = json!(a.format(&gens));
            to_json_string(&v)
        }
        Format::Text => {
            let mut out = String::new();
            row(&mut out, "group", group_name(&gens));
            row(&mut out, "convention", conv.name());
            row(&mut out, "element", a.format(&gens));
            criterion_text(&mut out, &gens, &r);
            Ok(out)
        }
    }
}

pub fn check_quadruple(opts: &GlobalOpts, texts: [&String; 4]) -> Result<String, CliError> {
    let gens = group(opts, 2)?;
    let conv = StarConvention::from(opts.star_convention);
    let [a, b, s, t] = [texts[0], texts[1], texts[2], texts[3]].map(|x| element(&gens, x));
    let (a, b, s, t) = (a?, b?, s?, t?);
    let parts = json!({
        "a": a.format(&gens), "b": b.format(&gens), "s": s.format(&gens), "t": t.format(&gens),
    });
    let q = match Quadruple::in_group(&gens, a, b, s, t) {
        Ok(q) => q,
        Err(QuadrupleError::IdentityViolation(res)) => {
            let residual = res.format(&gens);
            let report = match opts.format {
                Format::Json => to_json_string(&json!({
                    "group": group_name(&gens),
                    "quadruple": parts,
                    "identity_holds": false,
                    "residual": residual,
                }))?,
                Format::Text => {
                    let mut out = String::new();
                    row(&mut out, "group", group_name(&gens));
                    row(&mut out, "identity", "violated");
                    row(&mut out, "a·t - s·b", &residual);
                    out
                }
            };
            return Err(CliError::IdentityViolation { residual, report });
        }
        Err(e) => return Err(CliError::Config(e.to_string())),
    };
    let r = check_criterion(&gens, &q, conv)?;
    match opts.format {
        Format::Json => {
            let mut v = criterion_json(&gens, &r);
            v["group"] = json!(group_name(&gens));
            v["quadruple"] = parts;
            to_json_string(&v)
        }
        Format::Text => {
            let mut out = String::new();
            row(&mut out, "group", group_name(&gens));
            row(&mut out, "convention", conv.name());
            for k in ["a", "b", "s", "t"] {
                row(&mut out, k, parts[k].as_str().unwrap_or_default());
            }
            criterion_text(&mut out, &gens, &r);
            Ok(out)
        }
    }
}

fn check_plateau(window: usize, plateau: usize, what: &str) -> Result<(), CliError> {
    if plateau < 2 {
        return Err(CliError::Config(format!("plateau must be at least 2, got {plateau}")));
    }
    if window < plateau + 2 {
        return Err(CliError::Config(format!(
            "{what} {window} is too small for plateau {plateau}; need ≥ {}",
            plateau + 2
        )));
    }
    Ok(())
}

fn verdict_json(v: &Verdict) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

pub fn profile(opts: &GlobalOpts, spec: &str, window: usize, plateau: usize) -> Result<String, CliError> {
    check_plateau(window, plateau, "window")?;
    let gens = group(opts, 1)?;
    let conv = StarConvention::from(opts.star_convention);
    let u = resolve(&gens, spec, 2 * window)?;
    let table = windowed_profile(&gens, u.as_ref(), window, window, conv)?;
    let diagonal = table.diagonal();
    let verdict = plateau_verdict(&diagonal, plateau);
    match opts.format {
        Format::Json => to_json_string(&json!({
            "series": spec,
            "group": group_name(&gens),
            "convention": conv.name(),
            "window": window,
            "plateau": plateau,
            "profile": table,
            "diagonal": diagonal,
            "verdict": verdict_json(&verdict),
        })),
        Format::Text => {
            let mut out = String::new();
            row(&mut out, "series", spec);
            row(&mut out, "group", group_name(&gens));
            row(&mut out, "convention", conv.name());
            row(&mut out, "window", format!("{window} (plateau {plateau})"));
            let _ = write!(out, "rho(j,k)  k:");
            for k in 0..=window {
                let _ = write!(out, "{k:>4}");
            }
            out.push('\n');
            for (j, r) in table.table.iter().enumerate() {
                let _ = write!(out, "  j={j:<9}");
                for v in r {
                    let _ = write!(out, "{v:>4}");
                }
                out.push('\n');
            }
            row(&mut out, "diagonal", join(&diagonal));
            row(&mut out, "verdict", &verdict);
            Ok(out)
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

pub fn hankel(opts: &GlobalOpts, spec: &str, order: usize, plateau: usize) -> Result<String, CliError> {
    if order == 0 {
        return Err(CliError::Config("order must be at least 1".into()));
    }
    let gens = group(opts, 1)?;
    let len = 2 * order - 1;
    let u = resolve(&gens, spec, len)?;
    let coeffs = power_coefficients(u.as_ref(), 1, len)?;
    let ranks = hankel_rank_profile(&coeffs, order)?;
    let verdict = (order >= plateau + 2 && plateau >= 2).then(|| plateau_verdict(&ranks, plateau));
    match opts.format {
        Format::Json => to_json_string(&json!({
            "series": spec,
            "order": order,
            "plateau": plateau,
            "ranks": ranks,
            "verdict": verdict.as_ref().map(verdict_json),
        })),
        Format::Text => {
            let mut out = String::new();
            row(&mut out, "series", spec);
            row(&mut out, "order", order);
            row(&mut out, "ranks", join(&ranks));
            if let Some(v) = verdict {
                row(&mut out, "verdict", v);
            }
            Ok(out)
        }
    }
}

fn truncation_text<S: Scalar>(gens: &GeneratorSet, t: &SeriesTruncation<S>, fmt: impl Fn(&S) -> String) -> String {
    let mut out = String::new();
    for (w, c) in t.coefficients.iter() {
        let _ = writeln!(out, "{:<16}{}", gens.format_word(w), fmt(c));
    }
    out
}

pub fn expand(opts: &GlobalOpts, expr: &str, radius: usize, tol: Option<f64>) -> Result<String, CliError> {
    let gens = group(opts, 2)?;
    let e = parse(expr, &gens)?;
    let (json, body, header) = match tol {
        Some(tol) => {
            let e64 = e.map_scalars(&|c| lift::<Complex64>(c).expect("complex field holds every Gaussian rational"));
            let t = expand_numeric(&e64, tol)?;
            let bound = match t.mode {
                ratcrit::rational::ExpansionMode::Numeric { tail_bound } => tail_bound,
                ratcrit::rational::ExpansionMode::Exact => 0.0,
            };
            (
                t.to_json(&gens),
                truncation_text(&gens, &t, |c| {
                    let (re, im) = c.to_parts_string();
                    format!("{re} {im}i")
                }),
                format!("numeric, tail bound {bound:e}"),
            )
        }
        None => {
            if radius == 0 {
                return Err(CliError::Config("radius must be at least 1".into()));
            }
            let t = expand_exact(&e, radius)?;
            (t.to_json(&gens), truncation_text(&gens, &t, format_gaussian), format!("exact, radius {radius}"))
        }
    };
    match opts.format {
        Format::Json => to_json_string(&serde_json::to_value(json)?),
        Format::Text => {
            let mut out = String::new();
            row(&mut out, "expansion", header);
            row(&mut out, "terms", json.coeffs.len());
            out.push_str(&body);
            Ok(out)
        }
    }
}

fn random_element(rng: &mut StdRng, rank: usize) -> Element {
    let n = rng.gen_range(1..=3);
    Element::from_terms((0..n).map(|_| {
        let letter = rng.gen_range(1..=rank as i32) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let w = if rng.gen_bool(0.3) { reduce(&[]) } else { reduce(&[letter]) };
        let num = loop {
            let k = rng.gen_range(-3i64..=3);
            if k != 0 {
                break k;
            }
        };
        (w, gaussian_ratio(num, rng.gen_range(1..=3)))
    }))
}

fn random_nonzero(rng: &mut StdRng, rank: usize) -> Element {
    loop {
        let e = random_element(rng, rank);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn survey(opts: &GlobalOpts, count: usize) -> Result<String, CliError> {
    let gens = group(opts, 2)?;
    let conv = StarConvention::from(opts.star_convention);
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut rows = Vec::with_capacity(count);
    let mut failures = 0;
    for i in 0..count {
        let (s, t) = (random_nonzero(&mut rng, gens.rank()), random_nonzero(&mut rng, gens.rank()));
        let (m1, m2) = (random_nonzero(&mut rng, gens.rank()), random_nonzero(&mut rng, gens.rank()));
        let q1 =
            Quadruple::new(&s * &m1, &m1 * &t, s.clone(), t.clone()).map_err(|e| CliError::Internal(e.to_string()))?;
        let q2 =
            Quadruple::new(&s * &m2, &m2 * &t, s.clone(), t.clone()).map_err(|e| CliError::Internal(e.to_string()))?;
        let r = check_criterion(&gens, &q1, conv)?;
        let lemmas = lemma_identity_suite(&gens, &q1, &q2, conv)?;
        let ok = r.certified && r.rank_f == r.rank_p + r.rank_p_inv && lemmas.all_hold();
        failures += usize::from(!ok);
        rows.push(json!({
            "index": i,
            "a": q1.a().format(&gens),
            "s": s.format(&gens),
            "t": t.format(&gens),
            "rank_p": r.rank_p,
            "rank_p_inv": r.rank_p_inv,
            "rank_f": r.rank_f,
            "certified": r.certified,
            "identities_hold": lemmas.all_hold(),
        }));
    }
    let report = match opts.format {
        Format::Json => to_json_string(&json!({
            "group": group_name(&gens),
            "convention": conv.name(),
            "seed": opts.seed,
            "count": count,
            "failures": failures,
            "instances": rows,
        }))?,
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:>5} {:>7} {:>10} {:>7} {:>10} {:>11}",
                "#", "rank_P", "rank_P^-1", "rank_F", "certified", "identities"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>5} {:>7} {:>10} {:>7} {:>10} {:>11}",
                    r["index"], r["rank_p"], r["rank_p_inv"], r["rank_f"], r["certified"], r["identities_hold"]
                );
            }
            let _ = writeln!(out, "{} of {count} instances consistent (seed {})", count - failures, opts.seed);
            out
        }
    };
    if failures > 0 {
        return Err(CliError::Failed { message: format!("{failures} of {count} instances inconsistent"), report });
    }
    Ok(report)
}
