use rayon::prelude::*;

use knotcalc::kirby::{procedure1, procedure2, untwist_upper_bound};
use knotcalc::knotspec::{evaluate, parse, KnotTable};
use knotcalc::obstruct::{certify_family, entry_ledger, Invariant};
use knotcalc::Rational;

use crate::{Failure, Outcome};

const REQUIRED: [&str; 3] = ["10_32", "10_82", "whitehead_double"];

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn run(n_max: u64, table: &KnotTable) -> Outcome {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    if let Some(missing) = REQUIRED.iter().find(|n| table.get(n).is_none()) {
        return Err(Failure::Data(format!("table has no entry {missing}")));
    }

    let mut checks: Vec<Check> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let r = certify_family(n, table);
            let detail = match r.failed_stage() {
                None => format!(
                    "{} p/q = {}/{}: sd = 1, tu = 2, u_a = tu_a = 2",
                    r.expression, r.p, r.q
                ),
                Some(s) => format!("{}: stage {} failed: {}", r.expression, s.name, s.detail),
            };
            check(format!("family n={n}"), r.passed, detail)
        })
        .collect();

    checks.extend(signature_checks(table)?);
    checks.push(whitehead_check(table));
    checks.push(procedure_check());
    checks.push(untwist_check());

    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let mut report = String::new();
    for c in &checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        report += &format!("{mark}  {:<34} {}\n", c.name, c.detail);
    }
    report += &format!("{} checks, {} failed\n", checks.len(), failed.len());
    crate::out(&report);
    match failed.first() {
        None => Ok(()),
        Some(c) => Err(Failure::Verdict(format!("{} failed: {}", c.name, c.detail))),
    }
}

fn signature_checks(table: &KnotTable) -> Result<Vec<Check>, Failure> {
    let mut exprs = vec![
        ("10_32".to_string(), true, false),
        ("-10_82".to_string(), false, true),
        ("10_32 # -10_82".to_string(), true, true),
    ];
    for n in 2..=5 {
        exprs.push((format!("cable({n}, 10_32 # -10_82)"), true, true));
    }
    exprs
        .into_par_iter()
        .map(|(text, want_pos, want_neg)| {
            let expr = parse(&text).expect("well-formed");
            let r = evaluate(&expr, table).map_err(|e| Failure::Data(e.to_string()))?;
            let Some(sf) = r.signature.available() else {
                return Ok(check(
                    format!("signs {text}"),
                    false,
                    "signature unavailable",
                ));
            };
            let values: Vec<i64> = sf.values().collect();
            let ok = (!want_pos || sf.takes_positive()) && (!want_neg || sf.takes_negative());
            Ok(check(
                format!("signs {text}"),
                ok,
                format!("values {values:?}"),
            ))
        })
        .collect()
}

fn whitehead_check(table: &KnotTable) -> Check {
    match entry_ledger("whitehead_double", table) {
        Ok(l) => {
            let ok = l.get(Invariant::TuA).is_exact() == Some(0)
                && l.get(Invariant::UA).is_exact() == Some(0)
                && l.get(Invariant::Sd).lo >= 1;
            check(
                "whitehead double",
                ok,
                format!(
                    "tu_a = {}, u_a = {}, sd = {}",
                    l.get(Invariant::TuA),
                    l.get(Invariant::UA),
                    l.get(Invariant::Sd)
                ),
            )
        }
        Err(e) => check("whitehead double", false, e),
    }
}

fn procedure_check() -> Check {
    let one = Rational::from_integer(1.into());
    let bad: Vec<String> = (1..=50u64)
        .into_par_iter()
        .flat_map_iter(|k| [1i64, -1].into_iter().map(move |s| (k, s)))
        .filter_map(|(k, s)| {
            let sv = Rational::from_integer(s.into());
            let p1 = procedure1(k, s).ok()?;
            let p2 = procedure2(k, s).ok()?;
            let ok1 = p1.verify().is_ok()
                && p1.final_diagram.framing_multiset() == vec![-one.clone(), one.clone()]
                && p1.final_diagram.is_split();
            let mut want = vec![sv.clone(), sv.clone(), -sv.clone()];
            want.sort();
            let ok2 = p2.verify().is_ok()
                && p2.final_diagram.framing_multiset() == want
                && p2.final_diagram.framing(1) == &sv
                && p2.final_diagram.is_split();
            (!(ok1 && ok2)).then(|| format!("k={k} sign={s}"))
        })
        .collect();
    let detail = if bad.is_empty() {
        "k = 1..50, both signs: {+1,-1} and {s,s,-s}, all linking 0".to_string()
    } else {
        format!("failures at {}", bad.join(", "))
    };
    check("kirby procedures", bad.is_empty(), detail)
}

fn untwist_check() -> Check {
    let entries: Vec<i64> = (-6..=6).filter(|m| *m != 0).collect();
    let mut lists: Vec<Vec<i64>> = vec![vec![]];
    let mut total = 0;
    let mut bad = None;
    for _ in 0..3 {
        lists = lists
            .iter()
            .flat_map(|l| {
                entries.iter().map(move |m| {
                    let mut l = l.clone();
                    l.push(*m);
                    l
                })
            })
            .collect();
        for l in &lists {
            total += 1;
            let cap = 2 * l.len() as u64 + 1;
            let ok = match untwist_upper_bound(l) {
                Ok(b) => b <= cap && ((b == cap) == l.iter().all(|m| m % 2 == 0)),
                Err(_) => false,
            };
            if !ok && bad.is_none() {
                bad = Some(l.clone());
            }
        }
    }
    match bad {
        None => check(
            "untwist bound",
            true,
            format!("{total} move lists: bound <= 2L+1, equality iff all even"),
        ),
        Some(l) => check("untwist bound", false, format!("fails on {l:?}")),
    }
}
