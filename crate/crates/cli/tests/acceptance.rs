//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.

use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use knotcalc::exactalg::{ldlstar_signature, GaussianRational, HermitianMatrix};
use knotcalc::kirby::{
    chain_determinant, expand_chain, procedure1, procedure2, reverse_slam_dunk, slam_dunk,
    untwist_upper_bound, SurgeryDiagram,
};
use knotcalc::knotspec::{evaluate, parse, pretzel_seifert, KnotTable};
use knotcalc::obstruct::{certify_family, entry_ledger, BoundsLedger, Invariant};
use knotcalc::seifert::{validate_seifert, SeifertMatrix};
use knotcalc::twobridge::{
    bf_obstruction, cf_to_fraction, linking_self, mod5_shortcut, BfOutcome, ShortcutResult,
    TwoBridgeFraction,
};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn family_arithmetic() -> Verdict {
    for n in 1..=100i64 {
        let (a, p) = (10 * n + 3, 40 * n + 15);
        let det = pretzel_seifert(a, 1, 3)
            .map_err(|e| e.to_string())?
            .determinant()
            .map_err(|e| e.to_string())?;
        ensure(det == BigInt::from(p), format!("det P({a},1,3) = {det}"))?;
        let cf = cf_to_fraction(&[a, 1, 3]).map_err(|e| e.to_string())?;
        ensure(cf == rat(p, 4), format!("[{a},1,3] = {cf}"))?;
    }
    Ok("n = 1..100: det = 40n+15, [10n+3,1,3] = (40n+15)/4".into())
}

fn bf_obstruction_family() -> Verdict {
    for n in 1..=100i64 {
        let p = 40 * n + 15;
        let f = TwoBridgeFraction::new(p, 4).map_err(|e| e.to_string())?;
        ensure(
            bf_obstruction(&f).is_obstructed(),
            format!("{f} not obstructed"),
        )?;
        ensure(
            mod5_shortcut(p, 4) == ShortcutResult::Obstructed,
            format!("shortcut inconclusive at {f}"),
        )?;
        let pu = p as u64;
        let hit = (1..p)
            .filter_map(|t| linking_self(&f, t).ok())
            .any(|l| l.modulus == pu && (l.numerator == 2 || l.numerator == pu - 2));
        ensure(!hit, format!("brute force finds a generator for {f}"))?;
    }
    let small = bf_obstruction(&TwoBridgeFraction::new(3, 1).unwrap());
    ensure(
        matches!(small.outcome, BfOutcome::Satisfiable { .. }),
        "3/1 should be satisfiable",
    )?;
    Ok(
        "(40n+15)/4 obstructed for n = 1..100 by search, brute force and mod 5; 3/1 satisfiable"
            .into(),
    )
}

fn signature_signs() -> Verdict {
    let table = KnotTable::bundled();
    let cases = [
        ("10_32".to_string(), true, false),
        ("-10_82".to_string(), false, true),
        ("10_32 # -10_82".to_string(), true, true),
    ]
    .into_iter()
    .chain((2..=5).map(|n| (format!("cable({n}, 10_32 # -10_82)"), true, true)));
    for (text, pos, neg) in cases {
        let r = evaluate(&parse(&text).unwrap(), &table).map_err(|e| e.to_string())?;
        let sf = r.signature.available().ok_or("signature unavailable")?;
        ensure(
            !pos || sf.takes_positive(),
            format!("{text} never positive"),
        )?;
        ensure(
            !neg || sf.takes_negative(),
            format!("{text} never negative"),
        )?;
    }
    Ok("10_32 > 0 somewhere, -10_82 < 0 somewhere, sum and cables n = 2..5 take both signs".into())
}

fn ledger_reproduction() -> Verdict {
    let table = KnotTable::bundled();
    for n in 1..=50 {
        let r = certify_family(n, &table);
        ensure(r.passed, format!("n = {n}: {:?}", r.failed_stage()))?;
        let l = r.ledger.unwrap();
        use Invariant::*;
        ensure(
            l.get(Sd).is_exact() == Some(1),
            format!("n = {n}: sd = {}", l.get(Sd)),
        )?;
        ensure(
            l.get(Tu).is_exact() == Some(2),
            format!("n = {n}: tu = {}", l.get(Tu)),
        )?;
        ensure(
            l.get(UA).is_exact() == Some(2),
            format!("n = {n}: u_a = {}", l.get(UA)),
        )?;
        ensure(
            l.get(TuA).is_exact() == Some(2),
            format!("n = {n}: tu_a = {}", l.get(TuA)),
        )?;
        ensure(
            l.get(SdA).lo == 1,
            format!("n = {n}: sd_a = {}", l.get(SdA)),
        )?;
    }
    let w = entry_ledger("whitehead_double", &table)?;
    ensure(
        w.get(Invariant::TuA).is_exact() == Some(0) && w.get(Invariant::UA).is_exact() == Some(0),
        "whitehead double algebraic invariants",
    )?;
    ensure(w.get(Invariant::Sd).lo >= 1, "whitehead double sd")?;
    Ok(format!(
        "n = 1..50: sd = 1, tu = 2, u_a = tu_a = 2, sd_a >= 1; whitehead double tu_a = u_a = 0, sd = {}",
        w.get(Invariant::Sd)
    ))
}

fn kirby_procedures() -> Verdict {
    let one = rat(1, 1);
    for k in 1..=50 {
        for s in [1i64, -1] {
            let sv = rat(s, 1);
            let p1 = procedure1(k, s).map_err(|e| e.to_string())?;
            p1.verify().map_err(|e| e.to_string())?;
            let d = &p1.final_diagram;
            ensure(
                d.framing_multiset() == vec![-one.clone(), one.clone()] && d.is_split(),
                format!("procedure1({k}, {s}) ends at {d}"),
            )?;
            let p2 = procedure2(k, s).map_err(|e| e.to_string())?;
            p2.verify().map_err(|e| e.to_string())?;
            let d = &p2.final_diagram;
            let mut want = vec![sv.clone(), sv.clone(), -sv.clone()];
            want.sort();
            ensure(
                d.framing_multiset() == want && d.is_split(),
                format!("procedure2({k}, {s}) ends at {d}"),
            )?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=6);
        let moves: Vec<i64> = (0..len)
            .map(|_| {
                let m = rng.gen_range(1..=8);
                if rng.gen() {
                    m
                } else {
                    -m
                }
            })
            .collect();
        let b = untwist_upper_bound(&moves).map_err(|e| e.to_string())?;
        let cap = 2 * len as u64 + 1;
        ensure(b <= cap, format!("{moves:?}: {b} > {cap}"))?;
        ensure(
            (b == cap) == moves.iter().all(|m| m % 2 == 0),
            format!("{moves:?}: equality case wrong"),
        )?;
    }
    Ok("k = 1..50 both signs end split at {+1,-1} and {s,s,-s}; 10^4 untwist bounds".into())
}

fn gi(re: i64, im: i64) -> GaussianRational {
    GaussianRational::new(rat(re, 1), rat(im, 1))
}

fn float_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    while checked < 1000 {
        let n = rng.gen_range(1..=12);
        let mut e = vec![(0i64, 0i64); n * n];
        for i in 0..n {
            e[i * n + i] = (rng.gen_range(-9..=9), 0);
            for j in i + 1..n {
                let (a, b) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
                e[i * n + j] = (a, b);
                e[j * n + i] = (a, -b);
            }
        }
        let m = DMatrix::from_fn(n, n, |i, j| {
            Complex::new(e[i * n + j].0 as f64, e[i * n + j].1 as f64)
        });
        let ev = m.symmetric_eigenvalues();
        let scale = ev.iter().fold(1.0f64, |a, x| a.max(x.abs()));
        if ev.iter().any(|x| x.abs() < 1e-6 * scale) {
            continue;
        }
        let pos = ev.iter().filter(|x| **x > 0.0).count() as i64;
        let want = (2 * pos - n as i64, 0);
        let h = HermitianMatrix::new(n, e.iter().map(|&(a, b)| gi(a, b)).collect())
            .map_err(|e| format!("{e:?}"))?;
        ensure(ldlstar_signature(&h) == want, format!("mismatch on {e:?}"))?;
        checked += 1;
    }
    Ok(format!(
        "{checked} random Hermitian matrices, dimension <= 12"
    ))
}

fn random_ledger(rng: &mut ChaCha8Rng) -> BoundsLedger {
    let mut l = BoundsLedger::new();
    for inv in Invariant::ALL {
        if rng.gen_bool(0.4) {
            l.raise_lo(inv, rng.gen_range(0..4), "input");
        }
        if rng.gen_bool(0.4) {
            l.lower_hi(inv, rng.gen_range(0..7), "input");
        }
    }
    l.alexander_trivial = [None, Some(true), Some(false)][rng.gen_range(0..3)];
    l.signature_takes_positive = rng.gen_bool(0.2);
    l.signature_takes_negative = rng.gen_bool(0.2);
    l.asserted_nontrivial = rng.gen_bool(0.2);
    l
}

fn property_suites() -> Verdict {
    let table = KnotTable::bundled();
    let mut matrices: Vec<SeifertMatrix> = table
        .names()
        .map(|n| table.get(n).unwrap().seifert_matrix.clone())
        .collect();
    matrices.extend((1..=50).map(|n| pretzel_seifert(10 * n + 3, 1, 3).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let (a, b, c) = (
            rng.gen_range(-5..5),
            rng.gen_range(-5..5),
            rng.gen_range(-5..5),
        );
        matrices.push(validate_seifert(&[vec![a, b], vec![b - 1, c]]).unwrap());
    }
    for m in &matrices {
        let a = m.alexander();
        ensure(
            a.is_symmetric() && a.at_one() == BigInt::from(1),
            format!("alexander of {m:?}"),
        )?;
    }

    let small: Vec<&SeifertMatrix> = matrices.iter().filter(|m| m.dim() <= 12).take(12).collect();
    for a in &small {
        let sa = a.signature_function();
        ensure(
            a.mirror().signature_function().same_as(&sa.negate()),
            "mirror antisymmetry",
        )?;
        for b in &small {
            let joint = a.block_sum(b).signature_function();
            ensure(
                joint.same_as(&sa.sum(&b.signature_function())),
                "block sum additivity",
            )?;
        }
    }

    let trefoil = validate_seifert(&[vec![-1, 1], vec![0, -1]]).unwrap();
    let eight = validate_seifert(&[vec![-1, 1], vec![0, 1]]).unwrap();
    for (v, xi) in [(&trefoil, [2, -1]), (&eight, [1, 3])] {
        for variant in [false, true] {
            let w = v.elementary_enlargement(&xi, variant);
            ensure(
                w.alexander() == v.alexander()
                    && w.determinant() == v.determinant()
                    && w.signature_function().same_as(&v.signature_function()),
                "stabilisation changed an invariant",
            )?;
        }
    }

    let mut idempotent = 0;
    for _ in 0..500 {
        let l = random_ledger(&mut rng);
        if let Ok(once) = l.propagate() {
            let twice = once.propagate().map_err(|c| c.to_string())?;
            ensure(
                once.to_json() == twice.to_json(),
                "propagate not idempotent",
            )?;
            idempotent += 1;
        }
        let mut tight = l.clone();
        let inv = Invariant::ALL[rng.gen_range(0..7)];
        tight.raise_lo(inv, l.get(inv).lo + rng.gen_range(0..2), "tighten");
        match (l.propagate(), tight.propagate()) {
            (Ok(a), Ok(b)) => ensure(b.refines(&a), "propagate not monotone")?,
            (Err(_), Ok(_)) => return Err("tightening removed a contradiction".into()),
            _ => {}
        }
    }

    for _ in 0..200 {
        let f = rat(rng.gen_range(-300..300), rng.gen_range(1..40));
        let n = rng.gen_range(-4..4);
        if f == rat(n, 1) {
            continue;
        }
        let d = SurgeryDiagram::unlinked(vec![rat(3, 1), f]);
        let e = reverse_slam_dunk(&d, 1, n).map_err(|e| e.to_string())?;
        ensure(
            slam_dunk(&e, 2).map_err(|e| e.to_string())? == d,
            "slam dunk round trip",
        )?;
    }

    for _ in 0..500 {
        let x = rat(rng.gen_range(-5000..5000), rng.gen_range(1..300));
        let c = expand_chain(&x);
        ensure(
            chain_determinant(&c).magnitude() == x.numer().magnitude(),
            format!("chain determinant of {x}"),
        )?;
    }
    Ok(format!(
        "{} matrices, 4 stabilisations, {idempotent}/500 consistent ledgers, 200 dunks, 500 chains",
        matrices.len()
    ))
}

fn end_to_end() -> Verdict {
    let out = Command::new(env!("CARGO_BIN_EXE_knotcalc"))
        .args(["verify-paper", "--n-max", "50"])
        .env_remove("KNOTCALC_TABLE")
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(
        out.status.code() == Some(0),
        format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ),
    )?;
    Ok(stdout.lines().last().unwrap_or_default().to_string())
}

fn main() {
    let criteria: [(&str, fn() -> Verdict, Option<Duration>); 8] = [
        (
            "family arithmetic",
            family_arithmetic,
            Some(Duration::from_secs(1)),
        ),
        (
            "linking-form obstruction",
            bf_obstruction_family,
            Some(Duration::from_secs(5)),
        ),
        (
            "signature sign behaviour",
            signature_signs,
            Some(Duration::from_secs(30)),
        ),
        ("ledger reproduction", ledger_reproduction, None),
        (
            "kirby procedures",
            kirby_procedures,
            Some(Duration::from_secs(5)),
        ),
        ("exact vs float oracle", float_oracle, None),
        ("property suites", property_suites, None),
        ("end to end", end_to_end, Some(Duration::from_secs(60))),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let verdict = match (verdict, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.2?}, budget {b:?}")),
            (v, _) => v,
        };
        match verdict {
            Ok(detail) => println!("criterion {}: PASS  {name} ({took:.2?}): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
