//! Interval bounds on unknotting-type invariants and the rules linking them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kirby::untwist_upper_bound;
use crate::knotspec::{evaluate, KnotExpr, KnotTable, SignatureField};
use crate::seifert::SignatureStepFunction;
use crate::twobridge::{
    bf_obstruction, cf_to_fraction, mod5_shortcut, BfVerdict, ShortcutResult, TwoBridgeFraction,
};
use crate::{BigInt, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Invariant {
    #[serde(rename = "g_alg")]
    GAlg,
    #[serde(rename = "sd_a")]
    SdA,
    #[serde(rename = "u_a")]
    UA,
    #[serde(rename = "tu_a")]
    TuA,
    #[serde(rename = "sd")]
    Sd,
    #[serde(rename = "tu")]
    Tu,
    #[serde(rename = "u")]
    U,
}

impl Invariant {
    pub const ALL: [Invariant; 7] = [
        Invariant::GAlg,
        Invariant::SdA,
        Invariant::UA,
        Invariant::TuA,
        Invariant::Sd,
        Invariant::Tu,
        Invariant::U,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::GAlg => "g_alg",
            Invariant::SdA => "sd_a",
            Invariant::UA => "u_a",
            Invariant::TuA => "tu_a",
            Invariant::Sd => "sd",
            Invariant::Tu => "tu",
            Invariant::U => "u",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == name)
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a bound has its current value.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Reason {
    rule: String,
    from: Option<(Invariant, Side)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Lo,
    Hi,
}

/// `[lo, hi]` with `hi = None` meaning unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: u64,
    pub hi: Option<u64>,
    lo_reason: Option<Reason>,
    hi_reason: Option<Reason>,
}

impl Default for Interval {
    fn default() -> Self {
        Self {
            lo: 0,
            hi: None,
            lo_reason: None,
            hi_reason: None,
        }
    }
}

impl Interval {
    pub fn is_exact(&self) -> Option<u64> {
        (self.hi == Some(self.lo)).then_some(self.lo)
    }

    pub fn contains(&self, x: u64) -> bool {
        self.lo <= x && self.hi.is_none_or(|h| x <= h)
    }

    fn is_empty(&self) -> bool {
        self.hi.is_some_and(|h| h < self.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{h}"),
            Some(h) => write!(f, "[{}, {h}]", self.lo),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

/// Bounds on `g_alg, sd_a, u_a, tu_a, sd, tu, u` plus the classical facts feeding them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BoundsLedger {
    bounds: [Interval; 7],
    /// `None` when the Alexander polynomial is unknown.
    pub alexander_trivial: Option<bool>,
    pub signature_takes_positive: bool,
    pub signature_takes_negative: bool,
    /// Geometric nontriviality, only ever asserted by input data.
    pub asserted_nontrivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("contradiction on {invariant}: lower bound {lo} exceeds upper bound {hi}; {}", chain.join("; "))]
pub struct Contradiction {
    pub invariant: Invariant,
    pub lo: u64,
    pub hi: u64,
    /// Rules that produced the two bounds, traced back to their inputs.
    pub chain: Vec<String>,
}

enum Rel {
    /// `x ≤ a·y + b`
    Le(Invariant, u64, u64, Invariant, &'static str),
}

const RULES: &[Rel] = {
    use Invariant::*;
    &[
        Rel::Le(GAlg, 1, 0, SdA, "g_alg <= sd_a"),
        Rel::Le(SdA, 1, 0, UA, "sd_a <= u_a"),
        Rel::Le(UA, 2, 0, GAlg, "u_a <= 2 g_alg"),
        Rel::Le(UA, 1, 0, TuA, "u_a = tu_a"),
        Rel::Le(TuA, 1, 0, UA, "u_a = tu_a"),
        Rel::Le(TuA, 2, 0, SdA, "tu_a <= 2 sd_a"),
        Rel::Le(SdA, 1, 0, Sd, "sd_a <= sd"),
        Rel::Le(TuA, 1, 0, Tu, "tu_a <= tu"),
        Rel::Le(Sd, 1, 0, Tu, "sd <= tu"),
        Rel::Le(Tu, 2, 1, Sd, "tu <= 2 sd + 1"),
        Rel::Le(Tu, 1, 0, U, "tu <= u"),
        Rel::Le(UA, 1, 0, U, "u_a <= u"),
    ]
};

impl BoundsLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, inv: Invariant) -> &Interval {
        &self.bounds[inv.index()]
    }

    /// Raises the lower bound of `inv` to `lo`, recording `rule`.
    pub fn raise_lo(&mut self, inv: Invariant, lo: u64, rule: &str) -> bool {
        self.set_lo(
            inv,
            lo,
            Reason {
                rule: rule.into(),
                from: None,
            },
        )
    }

    /// Lowers the upper bound of `inv` to `hi`, recording `rule`.
    pub fn lower_hi(&mut self, inv: Invariant, hi: u64, rule: &str) -> bool {
        self.set_hi(
            inv,
            hi,
            Reason {
                rule: rule.into(),
                from: None,
            },
        )
    }

    fn set_lo(&mut self, inv: Invariant, lo: u64, reason: Reason) -> bool {
        let b = &mut self.bounds[inv.index()];
        if lo > b.lo {
            b.lo = lo;
            b.lo_reason = Some(reason);
            true
        } else {
            false
        }
    }

    fn set_hi(&mut self, inv: Invariant, hi: u64, reason: Reason) -> bool {
        let b = &mut self.bounds[inv.index()];
        if b.hi.is_none_or(|h| hi < h) {
            b.hi = Some(hi);
            b.hi_reason = Some(reason);
            true
        } else {
            false
        }
    }

    fn apply_flags(&mut self) -> bool {
        use Invariant::*;
        let mut changed = false;
        match self.alexander_trivial {
            Some(true) => {
                for inv in [GAlg, SdA, UA, TuA] {
                    changed |= self.lower_hi(inv, 0, "trivial Alexander polynomial");
                }
            }
            Some(false) => {
                changed |= self.raise_lo(GAlg, 1, "nontrivial Alexander polynomial");
            }
            None => {}
        }
        if self.signature_takes_positive && self.signature_takes_negative {
            changed |= self.raise_lo(SdA, 2, "signature takes both signs");
        }
        if self.asserted_nontrivial {
            for inv in [Sd, Tu, U] {
                changed |= self.raise_lo(inv, 1, "asserted nontrivial");
            }
        }
        changed
    }

    fn apply_rule(&mut self, rel: &Rel) -> bool {
        let Rel::Le(x, a, b, y, name) = *rel;
        let mut changed = false;
        // lo_y >= ceil((lo_x - b) / a)
        let lo_x = self.get(x).lo;
        let need = lo_x.saturating_sub(b).div_ceil(a);
        changed |= self.set_lo(
            y,
            need,
            Reason {
                rule: name.into(),
                from: Some((x, Side::Lo)),
            },
        );
        // hi_x <= a hi_y + b
        if let Some(hy) = self.get(y).hi {
            changed |= self.set_hi(
                x,
                a * hy + b,
                Reason {
                    rule: name.into(),
                    from: Some((y, Side::Hi)),
                },
            );
        }
        changed
    }

    /// Least fixpoint of the rule set, or the first contradiction found.
    pub fn propagate(&self) -> Result<Self, Contradiction> {
        let mut out = self.clone();
        loop {
            let mut changed = out.apply_flags();
            for rel in RULES {
                changed |= out.apply_rule(rel);
                if let Some(c) = out.contradiction() {
                    return Err(c);
                }
            }
            if !changed {
                return Ok(out);
            }
        }
    }

    fn contradiction(&self) -> Option<Contradiction> {
        let inv = Invariant::ALL
            .into_iter()
            .find(|i| self.get(*i).is_empty())?;
        let b = self.get(inv);
        let mut chain = self.trace(inv, Side::Lo);
        chain.extend(self.trace(inv, Side::Hi));
        Some(Contradiction {
            invariant: inv,
            lo: b.lo,
            hi: b.hi.unwrap(),
            chain,
        })
    }

    fn trace(&self, mut inv: Invariant, mut side: Side) -> Vec<String> {
        let mut out = Vec::new();
        for _ in 0..32 {
            let b = self.get(inv);
            let (value, reason) = match side {
                Side::Lo => (format!("{inv} >= {}", b.lo), &b.lo_reason),
                Side::Hi => (format!("{inv} <= {}", b.hi.unwrap_or(0)), &b.hi_reason),
            };
            match reason {
                None => {
                    out.push(format!("{value} (input)"));
                    break;
                }
                Some(r) => {
                    out.push(format!("{value} by {}", r.rule));
                    match r.from {
                        Some((i, s)) => {
                            inv = i;
                            side = s;
                        }
                        None => break,
                    }
                }
            }
        }
        out
    }

    /// Whether every bound of `self` is at least as tight as the matching bound of `other`.
    pub fn refines(&self, other: &Self) -> bool {
        Invariant::ALL.into_iter().all(|i| {
            let (a, b) = (self.get(i), other.get(i));
            a.lo >= b.lo && b.hi.is_none_or(|h| a.hi.is_some_and(|x| x <= h))
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LedgerJson::from(self)).expect("ledger json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        let raw: LedgerJson = serde_json::from_value(v.clone())?;
        let mut out = Self {
            alexander_trivial: raw.alexander_trivial,
            signature_takes_positive: raw.signature_takes_positive,
            signature_takes_negative: raw.signature_takes_negative,
            asserted_nontrivial: raw.asserted_nontrivial,
            ..Self::default()
        };
        for (inv, (lo, hi)) in raw.bounds {
            out.raise_lo(inv, lo, "input");
            if let Some(h) = hi {
                out.lower_hi(inv, h, "input");
            }
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct LedgerJson {
    bounds: BTreeMap<Invariant, (u64, Option<u64>)>,
    alexander_trivial: Option<bool>,
    #[serde(default)]
    signature_takes_positive: bool,
    #[serde(default)]
    signature_takes_negative: bool,
    #[serde(default)]
    asserted_nontrivial: bool,
}

impl From<&BoundsLedger> for LedgerJson {
    fn from(l: &BoundsLedger) -> Self {
        Self {
            bounds: Invariant::ALL
                .into_iter()
                .map(|i| (i, (l.get(i).lo, l.get(i).hi)))
                .collect(),
            alexander_trivial: l.alexander_trivial,
            signature_takes_positive: l.signature_takes_positive,
            signature_takes_negative: l.signature_takes_negative,
            asserted_nontrivial: l.asserted_nontrivial,
        }
    }
}

impl Serialize for BoundsLedger {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        LedgerJson::from(self).serialize(s)
    }
}

impl fmt::Display for BoundsLedger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Invariant::ALL
            .iter()
            .map(|i| format!("{i} = {}", self.get(*i)))
            .collect();
        f.write_str(&parts.join(", "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateTarget {
    Unknot,
    AlexanderOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("certificate has no moves")]
    Empty,
    #[error("certificate move {0} is zero")]
    ZeroMove(usize),
}

/// Signed full-twist counts, one per twisting region, turning a knot into `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCertificate")]
pub struct TwistCertificate {
    pub moves: Vec<i64>,
    pub target: CertificateTarget,
}

#[derive(Deserialize)]
struct RawCertificate {
    moves: Vec<i64>,
    target: CertificateTarget,
}

impl TryFrom<RawCertificate> for TwistCertificate {
    type Error = CertificateError;
    fn try_from(r: RawCertificate) -> Result<Self, CertificateError> {
        Self::new(r.moves, r.target)
    }
}

impl TwistCertificate {
    pub fn new(moves: Vec<i64>, target: CertificateTarget) -> Result<Self, CertificateError> {
        if moves.is_empty() {
            return Err(CertificateError::Empty);
        }
        if let Some(i) = moves.iter().position(|m| *m == 0) {
            return Err(CertificateError::ZeroMove(i));
        }
        Ok(Self { moves, target })
    }
}

/// Upper bounds implied by a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateBounds {
    pub sd_like: Invariant,
    pub sd_hi: u64,
    pub tu_like: Invariant,
    pub tu_hi: u64,
}

pub fn certificate_to_bounds(c: &TwistCertificate) -> CertificateBounds {
    let total: u64 = c.moves.iter().map(|m| m.unsigned_abs()).sum();
    let tu_hi = total.min(untwist_upper_bound(&c.moves).expect("validated moves"));
    let (sd_like, tu_like) = match c.target {
        CertificateTarget::Unknot => (Invariant::Sd, Invariant::Tu),
        CertificateTarget::AlexanderOne => (Invariant::SdA, Invariant::TuA),
    };
    CertificateBounds {
        sd_like,
        sd_hi: c.moves.len() as u64,
        tu_like,
        tu_hi,
    }
}

impl BoundsLedger {
    pub fn apply_certificate(&mut self, c: &TwistCertificate) {
        let b = certificate_to_bounds(c);
        self.lower_hi(b.sd_like, b.sd_hi, "twist certificate");
        self.lower_hi(b.tu_like, b.tu_hi, "twist certificate");
    }

    /// Records the sign flags of an exact signature function.
    pub fn apply_signature(&mut self, sf: &SignatureStepFunction) {
        self.signature_takes_positive |= sf.takes_positive();
        self.signature_takes_negative |= sf.takes_negative();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignBehavior {
    BothSigns,
    NonPositive,
    NonNegative,
    Zero,
}

/// Sign behaviour of `σ` over the whole circle.
///
/// `BothSigns` rules out bounding a null-homologous disk in any `#ₘ(±ℂP²)`, so `sd_a ≥ 2`.
pub fn hslice_sign_test(sf: &SignatureStepFunction) -> SignBehavior {
    match (sf.takes_positive(), sf.takes_negative()) {
        (true, true) => SignBehavior::BothSigns,
        (true, false) => SignBehavior::NonNegative,
        (false, true) => SignBehavior::NonPositive,
        (false, false) => SignBehavior::Zero,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub n: u64,
    pub expression: String,
    pub p: u64,
    pub q: i64,
    pub stages: Vec<Stage>,
    pub bf: Option<BfVerdict>,
    pub ledger: Option<BoundsLedger>,
    pub passed: bool,
}

impl FamilyReport {
    pub fn failed_stage(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.passed)
    }
}

/// Certifies `sd = 1`, `tu = 2` for the pretzel knot `P(10n+3, 1, 3)`.
pub fn certify_family(n: u64, table: &KnotTable) -> FamilyReport {
    certify_family_with_q(n, 4, table)
}

/// [`certify_family`] with the fraction's denominator supplied, for negative controls.
pub fn certify_family_with_q(n: u64, q: i64, table: &KnotTable) -> FamilyReport {
    let a = 10 * n as i64 + 3;
    let p = 40 * n + 15;
    let expr = KnotExpr::Pretzel(a, 1, 3);
    let mut report = FamilyReport {
        n,
        expression: expr.to_string(),
        p,
        q,
        stages: vec![],
        bf: None,
        ledger: None,
        passed: false,
    };
    let stage = |report: &mut FamilyReport, name, passed, detail: String| {
        report.stages.push(Stage {
            name,
            passed,
            detail,
        });
        passed
    };

    if n == 0 {
        stage(
            &mut report,
            "parameters",
            false,
            "n must be at least 1".into(),
        );
        return report;
    }
    let inv = match evaluate(&expr, table) {
        Ok(r) => r,
        Err(e) => {
            stage(&mut report, "evaluate", false, e.to_string());
            return report;
        }
    };
    let det_ok = inv.determinant == BigInt::from(p);
    let detail = format!("det = {}, expected {p}", inv.determinant);
    if !stage(&mut report, "determinant", det_ok, detail) {
        return report;
    }

    let cf = cf_to_fraction(&[a, 1, 3]).expect("nonzero denominators");
    let expected = Rational::new(BigInt::from(p), BigInt::from(q));
    let frac_ok = cf == expected && cf.numer() == &inv.determinant;
    let detail = format!(
        "[{a},1,3] = {}, expected {}",
        crate::rational_to_string(&cf),
        crate::rational_to_string(&expected)
    );
    if !stage(&mut report, "fraction", frac_ok, detail) {
        return report;
    }

    let f = match TwoBridgeFraction::new(p as i64, q) {
        Ok(f) => f,
        Err(e) => {
            stage(&mut report, "linking_form", false, e.to_string());
            return report;
        }
    };
    let bf = bf_obstruction(&f);
    report.bf = Some(bf);
    let shortcut = mod5_shortcut(p as i64, q);
    let agree = !(shortcut == ShortcutResult::Obstructed && !bf.is_obstructed());
    let detail = format!("{f}: {:?}, mod 5 shortcut {:?}", bf.outcome, shortcut);
    if !stage(
        &mut report,
        "linking_form",
        bf.is_obstructed() && agree,
        detail,
    ) {
        return report;
    }

    let mut ledger = BoundsLedger::new();
    ledger.alexander_trivial = Some(inv.alexander.is_one());
    if let SignatureField::Available(sf) = &inv.signature {
        ledger.apply_signature(sf);
    }
    ledger.raise_lo(Invariant::UA, 2, "linking form obstruction");
    let cert = TwistCertificate::new(vec![2], CertificateTarget::Unknot).expect("nonzero");
    ledger.apply_certificate(&cert);
    let ledger = match ledger.propagate() {
        Ok(l) => l,
        Err(c) => {
            stage(&mut report, "propagate", false, c.to_string());
            return report;
        }
    };
    stage(&mut report, "propagate", true, ledger.to_string());

    use Invariant::*;
    let conclusions = ledger.get(Sd).is_exact() == Some(1)
        && ledger.get(Tu).is_exact() == Some(2)
        && ledger.get(UA).is_exact() == Some(2)
        && ledger.get(TuA).is_exact() == Some(2)
        && ledger.get(SdA).lo == 1
        && ledger.get(SdA).hi.is_some_and(|h| h <= 2);
    stage(
        &mut report,
        "conclusions",
        conclusions,
        "sd = 1, tu = 2, u_a = tu_a = 2, sd_a >= 1".into(),
    );
    report.ledger = Some(ledger);
    report.passed = report.stages.iter().all(|s| s.passed);
    report
}

/// Ledger for a table entry: classical invariants, asserted certificate and metadata.
pub fn entry_ledger(name: &str, table: &KnotTable) -> Result<BoundsLedger, String> {
    let entry = table
        .get(name)
        .ok_or_else(|| format!("table has no entry {name:?}"))?;
    let sm = &entry.seifert_matrix;
    let mut ledger = BoundsLedger::new();
    ledger.alexander_trivial = Some(sm.alexander().is_one());
    ledger.apply_signature(&sm.signature_function());
    ledger.asserted_nontrivial = entry.asserted_nontrivial;
    if let Some(c) = &entry.certificate {
        ledger.apply_certificate(&c.certificate);
    }
    for (inv, (lo, hi)) in &entry.asserted_bounds {
        ledger.raise_lo(*inv, *lo, "asserted table bound");
        if let Some(h) = hi {
            ledger.lower_hi(*inv, *h, "asserted table bound");
        }
    }
    ledger.propagate().map_err(|c| c.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use Invariant::*;

    #[test]
    fn propagate_examples() {
        let mut l = BoundsLedger::new();
        l.raise_lo(GAlg, 1, "input");
        l.lower_hi(GAlg, 1, "input");
        l.raise_lo(SdA, 2, "input");
        let out = l.propagate().unwrap();
        assert_eq!(out.get(UA).is_exact(), Some(2));
        assert_eq!(out.get(SdA).is_exact(), Some(2));
        assert_eq!(out.get(TuA).is_exact(), Some(2));

        let mut l = BoundsLedger::new();
        l.lower_hi(Sd, 1, "input");
        l.raise_lo(TuA, 2, "input");
        l.lower_hi(Tu, 2, "input");
        let out = l.propagate().unwrap();
        assert_eq!(out.get(Sd).is_exact(), Some(1));
        assert_eq!(out.get(Tu).is_exact(), Some(2));

        let mut l = BoundsLedger::new();
        l.alexander_trivial = Some(true);
        l.raise_lo(Sd, 1, "input");
        let out = l.propagate().unwrap();
        for inv in [GAlg, SdA, UA, TuA] {
            assert_eq!(out.get(inv).is_exact(), Some(0));
        }
        assert_eq!(out.get(Sd).lo, 1);
        assert_eq!(out.get(Sd).hi, None);
    }

    #[test]
    fn contradiction_reports_chain() {
        let mut l = BoundsLedger::new();
        l.alexander_trivial = Some(true);
        l.signature_takes_positive = true;
        l.signature_takes_negative = true;
        let err = l.propagate().unwrap_err();
        let text = err.to_string();
        assert!(text.contains("contradiction"), "{text}");
        assert!(
            err.chain.iter().any(|c| c.contains("both signs")),
            "{:?}",
            err.chain
        );
        assert!(
            err.chain.iter().any(|c| c.contains("trivial Alexander")),
            "{:?}",
            err.chain
        );
    }

    #[test]
    fn certificates() {
        let c = TwistCertificate::new(vec![2], CertificateTarget::Unknot).unwrap();
        let b = certificate_to_bounds(&c);
        assert_eq!((b.sd_like, b.sd_hi, b.tu_like, b.tu_hi), (Sd, 1, Tu, 2));
        let c = TwistCertificate::new(vec![1], CertificateTarget::Unknot).unwrap();
        assert_eq!(certificate_to_bounds(&c).tu_hi, 1);
        let c = TwistCertificate::new(vec![3, -5], CertificateTarget::AlexanderOne).unwrap();
        let b = certificate_to_bounds(&c);
        assert_eq!((b.sd_like, b.sd_hi, b.tu_like, b.tu_hi), (SdA, 2, TuA, 4));
        assert!(TwistCertificate::new(vec![], CertificateTarget::Unknot).is_err());
        assert!(TwistCertificate::new(vec![1, 0], CertificateTarget::Unknot).is_err());
        assert!(
            serde_json::from_str::<TwistCertificate>(r#"{"moves":[0],"target":"unknot"}"#).is_err()
        );
    }

    #[test]
    fn sign_test() {
        let t = crate::seifert::validate_seifert(&[vec![-1, 1], vec![0, -1]]).unwrap();
        let sf = t.signature_function();
        assert_eq!(hslice_sign_test(&sf), SignBehavior::NonPositive);
        assert_eq!(hslice_sign_test(&sf.negate()), SignBehavior::NonNegative);
        assert_eq!(
            hslice_sign_test(&SignatureStepFunction::zero()),
            SignBehavior::Zero
        );
    }

    #[test]
    fn family_small() {
        let table = KnotTable::bundled();
        for n in [1, 2, 7] {
            let r = certify_family(n, &table);
            assert!(r.passed, "{:?}", r.failed_stage());
            let l = r.ledger.unwrap();
            assert_eq!(l.get(SdA).is_exact(), Some(1));
        }
        let r = certify_family_with_q(1, 3, &table);
        assert!(!r.passed);
        assert_eq!(r.failed_stage().unwrap().name, "fraction");
    }

    #[test]
    fn whitehead_double() {
        let table = KnotTable::bundled();
        let l = entry_ledger("whitehead_double", &table).unwrap();
        assert_eq!(l.get(TuA).is_exact(), Some(0));
        assert_eq!(l.get(UA).is_exact(), Some(0));
        assert_eq!(l.get(Sd).is_exact(), Some(1));
    }

    #[test]
    fn json_round_trip() {
        let mut l = BoundsLedger::new();
        l.raise_lo(Tu, 2, "x");
        l.lower_hi(Sd, 1, "x");
        l.alexander_trivial = Some(false);
        let j = l.to_json();
        assert_eq!(j["bounds"]["tu"], serde_json::json!([2, null]));
        assert_eq!(j["bounds"]["sd"], serde_json::json!([0, 1]));
        let back = BoundsLedger::from_json(&j).unwrap();
        assert_eq!(back.to_json(), j);
    }

    fn ledger_strategy() -> impl Strategy<Value = BoundsLedger> {
        (
            proptest::collection::vec((0u64..4, proptest::option::of(0u64..6)), 7),
            proptest::option::of(any::<bool>()),
            any::<bool>(),
            any::<bool>(),
            any::<bool>(),
        )
            .prop_map(|(bounds, alex, pos, neg, nontrivial)| {
                let mut l = BoundsLedger::new();
                for (inv, (lo, hi)) in Invariant::ALL.into_iter().zip(bounds) {
                    l.raise_lo(inv, lo, "input");
                    if let Some(h) = hi {
                        l.lower_hi(inv, lo + h, "input");
                    }
                }
                l.alexander_trivial = alex;
                l.signature_takes_positive = pos;
                l.signature_takes_negative = neg;
                l.asserted_nontrivial = nontrivial;
                l
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn propagate_idempotent(l in ledger_strategy()) {
            if let Ok(once) = l.propagate() {
                let twice = once.propagate().unwrap();
                prop_assert_eq!(once.to_json(), twice.to_json());
            }
        }

        #[test]
        fn propagate_monotone(l in ledger_strategy(), which in 0usize..7, raise in 0u64..3, cut in 0u64..3) {
            let inv = Invariant::ALL[which];
            let mut tight = l.clone();
            tight.raise_lo(inv, l.get(inv).lo + raise, "tighten");
            let hi = l.get(inv).hi.unwrap_or(8);
            let new_hi = hi.saturating_sub(cut).max(tight.get(inv).lo);
            tight.lower_hi(inv, new_hi, "tighten");
            match (l.propagate(), tight.propagate()) {
                (Ok(a), Ok(b)) => prop_assert!(b.refines(&a)),
                (Err(_), Ok(_)) => prop_assert!(false, "tightening removed a contradiction"),
                _ => {}
            }
        }
    }
}
