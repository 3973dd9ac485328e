//! Knot expressions, the bundled knot table and invariant evaluation.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::obstruct::{Invariant, TwistCertificate};
use crate::poly::{LaurentPoly, PolyError};
use crate::seifert::{validate_seifert, SeifertError, SeifertMatrix, SignatureStepFunction};
use crate::twobridge::{cf_to_fraction, two_bridge_alexander, TwoBridgeError, TwoBridgeFraction};
use crate::BigInt;

pub use parse::{parse, ParseError, ParseErrorKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotExpr {
    Named(String),
    SeifertLiteral(SeifertMatrix),
    Pretzel(i64, i64, i64),
    TwoBridge(Vec<i64>),
    Mirror(Box<KnotExpr>),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    /// The `(n,1)`-cable.
    Cable(u32, Box<KnotExpr>),
}

impl KnotExpr {
    pub fn named(name: &str) -> Self {
        KnotExpr::Named(name.to_string())
    }

    pub fn mirror(e: KnotExpr) -> Self {
        KnotExpr::Mirror(Box::new(e))
    }

    pub fn sum(a: KnotExpr, b: KnotExpr) -> Self {
        KnotExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn cable(n: u32, e: KnotExpr) -> Self {
        KnotExpr::Cable(n, Box::new(e))
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Named(n) => f.write_str(n),
            KnotExpr::SeifertLiteral(m) => {
                let rows: Vec<String> = m.rows().iter().map(|r| format!("[{}]", join(r))).collect();
                write!(f, "seifert([{}])", rows.join(","))
            }
            KnotExpr::Pretzel(p, q, r) => write!(f, "P({p},{q},{r})"),
            KnotExpr::TwoBridge(t) => write!(f, "TB({})", join(t)),
            KnotExpr::Mirror(e) => match **e {
                KnotExpr::Sum(..) => write!(f, "-({e})"),
                _ => write!(f, "-{e}"),
            },
            KnotExpr::Sum(a, b) => match **b {
                KnotExpr::Sum(..) => write!(f, "{a} # ({b})"),
                _ => write!(f, "{a} # {b}"),
            },
            KnotExpr::Cable(n, e) => write!(f, "cable({n}, {e})"),
        }
    }
}

/// Genus-one Seifert matrix of the pretzel knot `P(p,q,r)`, all entries odd.
pub fn pretzel_seifert(p: i64, q: i64, r: i64) -> Result<SeifertMatrix, SeifertError> {
    if [p, q, r].iter().any(|x| x % 2 == 0) {
        return Err(SeifertError::NotSeifert(format!(
            "pretzel parameters must all be odd, got ({p},{q},{r})"
        )));
    }
    validate_seifert(&[
        vec![(p + q) / 2, (q + 1) / 2],
        vec![(q - 1) / 2, (q + r) / 2],
    ])
}

/// Asserted certificate stored with a table entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCertificate {
    #[serde(flatten)]
    pub certificate: TwistCertificate,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableEntry {
    pub name: String,
    pub seifert_matrix: SeifertMatrix,
    #[serde(default)]
    pub notes: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<TableCertificate>,
    #[serde(default)]
    pub asserted_nontrivial: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub asserted_bounds: BTreeMap<Invariant, (u64, Option<u64>)>,
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("cannot read table {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("table is not a JSON array of entries: {0}")]
    Schema(String),
    #[error("entry {name}: {message}")]
    Entry { name: String, message: String },
    #[error("duplicate entry {0}")]
    Duplicate(String),
}

/// Name → Seifert matrix plus metadata. Immutable once loaded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnotTable {
    entries: BTreeMap<String, TableEntry>,
}

const BUNDLED: &str = include_str!("../../data/knots.json");

impl KnotTable {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn bundled() -> Self {
        Self::from_json_str(BUNDLED).expect("bundled table is valid")
    }

    pub fn from_json_str(text: &str) -> Result<Self, TableError> {
        if text.trim().is_empty() {
            return Ok(Self::empty());
        }
        let raw: Vec<serde_json::Value> =
            serde_json::from_str(text).map_err(|e| TableError::Schema(e.to_string()))?;
        let mut entries = BTreeMap::new();
        for (i, value) in raw.into_iter().enumerate() {
            let name = value
                .get("name")
                .and_then(|n| n.as_str())
                .map(str::to_string)
                .ok_or_else(|| TableError::Entry {
                    name: format!("#{i}"),
                    message: "missing string field \"name\"".into(),
                })?;
            let entry: TableEntry =
                serde_json::from_value(value).map_err(|e| TableError::Entry {
                    name: name.clone(),
                    message: e.to_string(),
                })?;
            if entries.insert(name.clone(), entry).is_some() {
                return Err(TableError::Duplicate(name));
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self, TableError> {
        let text = std::fs::read_to_string(path).map_err(|source| TableError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text)
    }

    pub fn get(&self, name: &str) -> Option<&TableEntry> {
        self.entries.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SignatureField {
    Available(SignatureStepFunction),
    Unavailable { reason: String },
}

impl SignatureField {
    pub fn available(&self) -> Option<&SignatureStepFunction> {
        match self {
            SignatureField::Available(s) => Some(s),
            SignatureField::Unavailable { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub alexander: String,
    pub determinant: String,
    pub signature: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub alexander: LaurentPoly,
    #[serde(serialize_with = "bigint_str", deserialize_with = "bigint_from_str")]
    pub determinant: BigInt,
    pub signature: SignatureField,
    pub provenance: Provenance,
}

fn bigint_from_str<'de, D: serde::Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    String::deserialize(d)?
        .parse()
        .map_err(serde::de::Error::custom)
}

fn bigint_str<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unknown knot name {0:?}")]
    UnknownName(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Seifert(#[from] SeifertError),
    #[error(transparent)]
    TwoBridge(#[from] TwoBridgeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

struct Evaluated {
    report: InvariantReport,
    matrix: Option<SeifertMatrix>,
}

/// Computes the Alexander polynomial, determinant and signature function of `e`.
pub fn evaluate(e: &KnotExpr, table: &KnotTable) -> Result<InvariantReport, EvalError> {
    Ok(eval_inner(e, table)?.report)
}

/// The Seifert matrix of `e` when one is available without synthesis.
pub fn matrix_of(e: &KnotExpr, table: &KnotTable) -> Result<Option<SeifertMatrix>, EvalError> {
    Ok(eval_inner(e, table)?.matrix)
}

fn from_matrix(m: SeifertMatrix, source: &str) -> Result<Evaluated, EvalError> {
    let report = InvariantReport {
        alexander: m.alexander(),
        determinant: m.determinant()?,
        signature: SignatureField::Available(m.signature_function()),
        provenance: Provenance {
            alexander: format!("det(t^(1/2) V - t^(-1/2) V^T) of {source}"),
            determinant: format!("|det(V + V^T)| of {source}"),
            signature: format!("exact inertia of the Hermitian form of {source}"),
        },
    };
    Ok(Evaluated {
        report,
        matrix: Some(m),
    })
}

fn eval_inner(e: &KnotExpr, table: &KnotTable) -> Result<Evaluated, EvalError> {
    match e {
        KnotExpr::Named(name) => {
            let entry = table
                .get(name)
                .ok_or_else(|| EvalError::UnknownName(name.clone()))?;
            from_matrix(entry.seifert_matrix.clone(), &format!("table entry {name}"))
        }
        KnotExpr::SeifertLiteral(m) => from_matrix(m.clone(), "literal matrix"),
        KnotExpr::Pretzel(p, q, r) => {
            let m = pretzel_seifert(*p, *q, *r)
                .map_err(|e| EvalError::InvalidParameter(e.to_string()))?;
            from_matrix(m, &format!("genus-one pretzel matrix P({p},{q},{r})"))
        }
        KnotExpr::TwoBridge(terms) => {
            let f = TwoBridgeFraction::from_rational(&cf_to_fraction(terms)?)?;
            let report = InvariantReport {
                alexander: two_bridge_alexander(&f),
                determinant: BigInt::from(f.p()),
                signature: SignatureField::Unavailable {
                    reason: format!("two-bridge knot {f} has no Seifert matrix"),
                },
                provenance: Provenance {
                    alexander: format!("two-bridge formula for {f}"),
                    determinant: format!("numerator of {f}"),
                    signature: "unavailable".into(),
                },
            };
            Ok(Evaluated {
                report,
                matrix: None,
            })
        }
        KnotExpr::Mirror(inner) => {
            let ev = eval_inner(inner, table)?;
            if let Some(m) = ev.matrix {
                return from_matrix(m.mirror(), &format!("-V^T for {e}"));
            }
            let r = ev.report;
            let signature = match r.signature {
                SignatureField::Available(s) => SignatureField::Available(s.negate()),
                u => u,
            };
            let report = InvariantReport {
                alexander: r.alexander,
                determinant: r.determinant,
                signature,
                provenance: Provenance {
                    alexander: format!("unchanged under mirror; {}", r.provenance.alexander),
                    determinant: format!("unchanged under mirror; {}", r.provenance.determinant),
                    signature: format!("negated; {}", r.provenance.signature),
                },
            };
            Ok(Evaluated {
                report,
                matrix: None,
            })
        }
        KnotExpr::Sum(a, b) => {
            let ea = eval_inner(a, table)?;
            let eb = eval_inner(b, table)?;
            if let (Some(ma), Some(mb)) = (&ea.matrix, &eb.matrix) {
                return from_matrix(ma.block_sum(mb), &format!("block sum for {e}"));
            }
            let (ra, rb) = (ea.report, eb.report);
            let signature = match (&ra.signature, &rb.signature) {
                (SignatureField::Available(x), SignatureField::Available(y)) => {
                    SignatureField::Available(x.sum(y))
                }
                (SignatureField::Unavailable { reason }, _)
                | (_, SignatureField::Unavailable { reason }) => SignatureField::Unavailable {
                    reason: format!("summand: {reason}"),
                },
            };
            let alexander = ra.alexander.mul(&rb.alexander).normalize_symmetric()?;
            let report = InvariantReport {
                alexander,
                determinant: &ra.determinant * &rb.determinant,
                signature,
                provenance: Provenance {
                    alexander: "product of summands".into(),
                    determinant: "product of summands".into(),
                    signature: "pointwise sum of summands".into(),
                },
            };
            Ok(Evaluated {
                report,
                matrix: None,
            })
        }
        KnotExpr::Cable(n, inner) => {
            if *n < 2 {
                return Err(EvalError::InvalidParameter(format!(
                    "cable parameter must be at least 2, got {n}"
                )));
            }
            let r = eval_inner(inner, table)?.report;
            let alexander = r.alexander.substitute_power(*n as i64)?;
            let determinant = alexander.at_minus_one().abs();
            let signature = match r.signature {
                SignatureField::Available(s) => SignatureField::Available(s.cable_pullback(*n)),
                SignatureField::Unavailable { reason } => SignatureField::Unavailable {
                    reason: format!("companion: {reason}"),
                },
            };
            let report = InvariantReport {
                alexander,
                determinant,
                signature,
                provenance: Provenance {
                    alexander: format!("companion polynomial at t^{n}"),
                    determinant: "|alexander(-1)|".into(),
                    signature: format!("companion signature pulled back along w -> w^{n}"),
                },
            };
            Ok(Evaluated {
                report,
                matrix: None,
            })
        }
    }
}
