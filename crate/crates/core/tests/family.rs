use knotcalc::knotspec::{pretzel_seifert, KnotTable};
use knotcalc::obstruct::{certify_family, certify_family_with_q, entry_ledger, Invariant};
use knotcalc::twobridge::{
    bf_obstruction, cf_to_fraction, linking_self, mod5_shortcut, BfOutcome, ShortcutResult,
    TwoBridgeFraction,
};
use knotcalc::{BigInt, Rational};

#[test]
fn family_arithmetic() {
    for n in 1..=100i64 {
        let (a, p) = (10 * n + 3, 40 * n + 15);
        let m = pretzel_seifert(a, 1, 3).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(p));
        assert_eq!(
            cf_to_fraction(&[a, 1, 3]).unwrap(),
            Rational::new(p.into(), 4.into())
        );
    }
}

#[test]
fn family_is_obstructed_three_ways() {
    for n in 1..=100i64 {
        let p = 40 * n + 15;
        let f = TwoBridgeFraction::new(p, 4).unwrap();
        assert!(bf_obstruction(&f).is_obstructed());
        assert_eq!(mod5_shortcut(p, 4), ShortcutResult::Obstructed);
        let p_u = p as u64;
        let hit = (1..p)
            .filter_map(|t| linking_self(&f, t).ok())
            .any(|l| l.modulus == p_u && (l.numerator == 2 || l.numerator == p_u - 2));
        assert!(!hit, "p = {p}");
    }
    let v = bf_obstruction(&TwoBridgeFraction::new(3, 1).unwrap());
    assert!(matches!(v.outcome, BfOutcome::Satisfiable { .. }));
}

#[test]
fn family_certificates() {
    let table = KnotTable::bundled();
    for n in 1..=20 {
        let r = certify_family(n, &table);
        assert!(r.passed, "n = {n}: {:?}", r.failed_stage());
        let l = r.ledger.unwrap();
        assert_eq!(l.get(Invariant::Sd).is_exact(), Some(1));
        assert_eq!(l.get(Invariant::Tu).is_exact(), Some(2));
        assert_eq!(l.get(Invariant::UA).is_exact(), Some(2));
        assert_eq!(l.get(Invariant::TuA).is_exact(), Some(2));
    }
    let bad = certify_family_with_q(1, 3, &table);
    assert!(!bad.passed);
    assert_eq!(bad.failed_stage().unwrap().name, "fraction");
}

#[test]
fn whitehead_double_ledger() {
    let l = entry_ledger("whitehead_double", &KnotTable::bundled()).unwrap();
    assert_eq!(l.get(Invariant::TuA).is_exact(), Some(0));
    assert_eq!(l.get(Invariant::UA).is_exact(), Some(0));
    assert!(l.get(Invariant::Sd).lo >= 1);
}

#[test]
fn asserted_heegaard_floer_bounds() {
    let table = KnotTable::bundled();
    for name in ["10_68", "11a_103"] {
        let l = entry_ledger(name, &table).unwrap();
        assert_eq!(l.get(Invariant::Sd).is_exact(), Some(1), "{name}");
        assert!(l.get(Invariant::Tu).lo >= 2, "{name}");
    }
}
