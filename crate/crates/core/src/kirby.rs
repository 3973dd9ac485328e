//! Kirby calculus on framed unknots, tracked at the level of framings and linking numbers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{parse_rational, rational_to_string, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KirbyError {
    #[error("no component {0}")]
    NoComponent(usize),
    #[error("cannot slide component {0} over itself")]
    SelfSlide(usize),
    #[error("slide sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("component {0} has non-integer framing {1}; expand it first")]
    NonIntegerFraming(usize, String),
    #[error("reverse slam dunk of framing {framing} at {n} leaves no residual framing")]
    DegenerateResidual { framing: String, n: i64 },
    #[error("leaf {leaf} must link exactly one component with linking number +-1")]
    NotALeaf { leaf: usize },
    #[error("leaf {0} has framing 0")]
    ZeroLeaf(usize),
    #[error("linking number overflow")]
    Overflow,
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("parameter k must be at least 1")]
    BadK,
    #[error("move {0} is zero")]
    ZeroMove(usize),
    #[error("empty move list")]
    NoMoves,
}

/// Framed unknots with rational framings and pairwise integer linking numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiagram", into = "RawDiagram")]
pub struct SurgeryDiagram {
    framings: Vec<Rational>,
    linking: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    framings: Vec<String>,
    linking: Vec<Vec<i64>>,
}

impl TryFrom<RawDiagram> for SurgeryDiagram {
    type Error = KirbyError;
    fn try_from(r: RawDiagram) -> Result<Self, KirbyError> {
        let framings = r
            .framings
            .iter()
            .map(|s| {
                parse_rational(s).ok_or_else(|| KirbyError::Malformed(format!("framing {s:?}")))
            })
            .collect::<Result<_, _>>()?;
        Self::new(framings, r.linking)
    }
}

impl From<SurgeryDiagram> for RawDiagram {
    fn from(d: SurgeryDiagram) -> Self {
        RawDiagram {
            framings: d.framings.iter().map(rational_to_string).collect(),
            linking: d.linking,
        }
    }
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

fn checked(a: i64, b: i64, c: i64) -> Result<i64, KirbyError> {
    b.checked_mul(c)
        .and_then(|bc| a.checked_add(bc))
        .ok_or(KirbyError::Overflow)
}

impl SurgeryDiagram {
    pub fn new(framings: Vec<Rational>, linking: Vec<Vec<i64>>) -> Result<Self, KirbyError> {
        let n = framings.len();
        if linking.len() != n || linking.iter().any(|r| r.len() != n) {
            return Err(KirbyError::Malformed(format!(
                "linking matrix must be {n}x{n}"
            )));
        }
        for i in 0..n {
            if linking[i][i] != 0 {
                return Err(KirbyError::Malformed(format!("nonzero diagonal at {i}")));
            }
            for j in 0..i {
                if linking[i][j] != linking[j][i] {
                    return Err(KirbyError::Malformed(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { framings, linking })
    }

    /// Unlinked unknots with the given framings.
    pub fn unlinked(framings: Vec<Rational>) -> Self {
        let n = framings.len();
        Self {
            framings,
            linking: vec![vec![0; n]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.framings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.framings.is_empty()
    }

    pub fn framing(&self, i: usize) -> &Rational {
        &self.framings[i]
    }

    pub fn framings(&self) -> &[Rational] {
        &self.framings
    }

    pub fn lk(&self, i: usize, j: usize) -> i64 {
        self.linking[i][j]
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    fn check(&self, i: usize) -> Result<(), KirbyError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(KirbyError::NoComponent(i))
        }
    }

    fn integer_framing(&self, i: usize) -> Result<i64, KirbyError> {
        let f = &self.framings[i];
        if !f.is_integer() {
            return Err(KirbyError::NonIntegerFraming(i, rational_to_string(f)));
        }
        f.numer().to_i64().ok_or(KirbyError::Overflow)
    }

    fn set_lk(&mut self, i: usize, j: usize, v: i64) {
        self.linking[i][j] = v;
        self.linking[j][i] = v;
    }

    /// Framings sorted, for multiset comparisons.
    pub fn framing_multiset(&self) -> Vec<Rational> {
        let mut f = self.framings.clone();
        f.sort();
        f
    }

    /// True when every pairwise linking number is zero.
    pub fn is_split(&self) -> bool {
        self.linking.iter().flatten().all(|x| *x == 0)
    }
}

impl fmt::Display for SurgeryDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fr: Vec<String> = self.framings.iter().map(rational_to_string).collect();
        write!(f, "framings [{}]", fr.join(", "))?;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.linking[i][j] != 0 {
                    write!(f, ", lk({i},{j}) = {}", self.linking[i][j])?;
                }
            }
        }
        Ok(())
    }
}

/// Slides component `i` over component `j` with orientation sign `sign`.
pub fn handle_slide(
    d: &SurgeryDiagram,
    i: usize,
    j: usize,
    sign: i64,
) -> Result<SurgeryDiagram, KirbyError> {
    d.check(i)?;
    d.check(j)?;
    if i == j {
        return Err(KirbyError::SelfSlide(i));
    }
    if sign != 1 && sign != -1 {
        return Err(KirbyError::BadSign(sign));
    }
    let fj = d.integer_framing(j)?;
    let lij = d.lk(i, j);
    let mut out = d.clone();
    out.framings[i] = &d.framings[i] + int(fj) + int(checked(0, 2 * sign, lij)?);
    out.set_lk(i, j, checked(lij, sign, fj)?);
    for k in 0..d.len() {
        if k != i && k != j {
            out.set_lk(i, k, checked(d.lk(i, k), sign, d.lk(j, k))?);
        }
    }
    Ok(out)
}

/// Rewrites the framing `p/q` of `component` as `n` plus a new leaf of framing `r`,
/// where `p/q = n - 1/r`.
pub fn reverse_slam_dunk(
    d: &SurgeryDiagram,
    component: usize,
    n: i64,
) -> Result<SurgeryDiagram, KirbyError> {
    d.check(component)?;
    let f = &d.framings[component];
    let gap = int(n) - f;
    if gap.is_zero() {
        return Err(KirbyError::DegenerateResidual {
            framing: rational_to_string(f),
            n,
        });
    }
    let r = gap.recip();
    let m = d.len();
    let mut framings = d.framings.clone();
    framings[component] = int(n);
    framings.push(r);
    let mut linking: Vec<Vec<i64>> = d
        .linking
        .iter()
        .map(|row| {
            let mut row = row.clone();
            row.push(0);
            row
        })
        .collect();
    linking.push(vec![0; m + 1]);
    linking[component][m] = 1;
    linking[m][component] = 1;
    Ok(SurgeryDiagram { framings, linking })
}

/// Removes `leaf` (framing `r`, linked once with one neighbour `f`) and sets `f ← f - 1/r`.
pub fn slam_dunk(d: &SurgeryDiagram, leaf: usize) -> Result<SurgeryDiagram, KirbyError> {
    d.check(leaf)?;
    let nbrs: Vec<usize> = (0..d.len()).filter(|&k| d.lk(leaf, k) != 0).collect();
    let [nb] = nbrs[..] else {
        return Err(KirbyError::NotALeaf { leaf });
    };
    if d.lk(leaf, nb).abs() != 1 {
        return Err(KirbyError::NotALeaf { leaf });
    }
    let r = &d.framings[leaf];
    if r.is_zero() {
        return Err(KirbyError::ZeroLeaf(leaf));
    }
    let mut framings = d.framings.clone();
    framings[nb] = &framings[nb] - r.recip();
    framings.remove(leaf);
    let linking = d
        .linking
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != leaf)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != leaf)
                .map(|(_, v)| *v)
                .collect()
        })
        .collect();
    Ok(SurgeryDiagram { framings, linking })
}

/// Negative continued fraction `p/q = a₀ - 1/(a₁ - 1/(…))` with `aᵢ ≥ 2` for `i ≥ 1`.
pub fn expand_chain(x: &Rational) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut x = x.clone();
    loop {
        let a = x.ceil();
        out.push(a.to_integer());
        let gap = &a - &x;
        if gap.is_zero() {
            return out;
        }
        x = gap.recip();
    }
}

/// Determinant of the tridiagonal linking matrix of a linear chain with these framings.
pub fn chain_determinant(chain: &[BigInt]) -> BigInt {
    let mut prev = BigInt::one();
    let mut cur = BigInt::one();
    for (i, a) in chain.iter().enumerate() {
        let next = if i == 0 { a.clone() } else { a * &cur - &prev };
        prev = cur;
        cur = next;
    }
    if chain.is_empty() {
        BigInt::one()
    } else {
        cur
    }
}

/// The linear chain as a diagram: consecutive components linked once.
pub fn chain_diagram(chain: &[BigInt]) -> SurgeryDiagram {
    let n = chain.len();
    let mut d =
        SurgeryDiagram::unlinked(chain.iter().cloned().map(Rational::from_integer).collect());
    for i in 1..n {
        d.set_lk(i - 1, i, 1);
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KirbyMove {
    ReverseSlamDunk {
        component: usize,
        integer_framing: i64,
    },
    SlamDunk {
        leaf: usize,
    },
    HandleSlide {
        i: usize,
        over: usize,
        sign: i64,
    },
    /// Geometric step with no effect on framings or linking numbers.
    Isotopy {
        note: String,
    },
}

impl KirbyMove {
    pub fn apply(&self, d: &SurgeryDiagram) -> Result<SurgeryDiagram, KirbyError> {
        match self {
            KirbyMove::ReverseSlamDunk {
                component,
                integer_framing,
            } => reverse_slam_dunk(d, *component, *integer_framing),
            KirbyMove::SlamDunk { leaf } => slam_dunk(d, *leaf),
            KirbyMove::HandleSlide { i, over, sign } => handle_slide(d, *i, *over, *sign),
            KirbyMove::Isotopy { .. } => Ok(d.clone()),
        }
    }

    pub fn is_isotopy(&self) -> bool {
        matches!(self, KirbyMove::Isotopy { .. })
    }
}

impl fmt::Display for KirbyMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KirbyMove::ReverseSlamDunk {
                component,
                integer_framing,
            } => write!(
                f,
                "reverse slam dunk on U{component} at framing {integer_framing}"
            ),
            KirbyMove::SlamDunk { leaf } => write!(f, "slam dunk U{leaf}"),
            KirbyMove::HandleSlide { i, over, sign } => {
                let s = if *sign > 0 { '+' } else { '-' };
                write!(f, "slide U{i} over U{over} ({s})")
            }
            KirbyMove::Isotopy { note } => write!(f, "isotopy: {note}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoggedMove {
    #[serde(flatten)]
    pub kind: KirbyMove,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub after: Option<SurgeryDiagram>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveLog {
    pub initial: SurgeryDiagram,
    pub moves: Vec<LoggedMove>,
    #[serde(rename = "final")]
    pub final_diagram: SurgeryDiagram,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("move {index} ({mv}) failed: {source}")]
    Illegal {
        index: usize,
        mv: String,
        source: KirbyError,
    },
    #[error("diagram after move {index} differs from the recorded snapshot")]
    Snapshot { index: usize },
    #[error("replayed final diagram differs from the recorded one")]
    Final,
}

impl MoveLog {
    fn start(initial: SurgeryDiagram) -> Self {
        Self {
            final_diagram: initial.clone(),
            initial,
            moves: vec![],
        }
    }

    fn push(&mut self, mv: KirbyMove) -> Result<(), KirbyError> {
        let next = mv.apply(&self.final_diagram)?;
        self.moves.push(LoggedMove {
            kind: mv,
            after: Some(next.clone()),
        });
        self.final_diagram = next;
        Ok(())
    }

    fn note(&mut self, note: impl Into<String>) {
        self.moves.push(LoggedMove {
            kind: KirbyMove::Isotopy { note: note.into() },
            after: Some(self.final_diagram.clone()),
        });
    }

    /// Folds the moves over the initial diagram, checking each recorded snapshot.
    pub fn replay(&self) -> Result<SurgeryDiagram, ReplayError> {
        let mut d = self.initial.clone();
        for (index, m) in self.moves.iter().enumerate() {
            d = m.kind.apply(&d).map_err(|source| ReplayError::Illegal {
                index,
                mv: m.kind.to_string(),
                source,
            })?;
            if m.after.as_ref().is_some_and(|a| *a != d) {
                return Err(ReplayError::Snapshot { index });
            }
        }
        Ok(d)
    }

    pub fn verify(&self) -> Result<(), ReplayError> {
        if self.replay()? == self.final_diagram {
            Ok(())
        } else {
            Err(ReplayError::Final)
        }
    }

    /// Moves other than isotopies.
    pub fn move_count(&self) -> usize {
        self.moves.iter().filter(|m| !m.kind.is_isotopy()).count()
    }

    pub fn slide_count(&self) -> usize {
        self.moves
            .iter()
            .filter(|m| matches!(m.kind, KirbyMove::HandleSlide { .. }))
            .count()
    }
}

fn unit_sign(sign: i64) -> Result<i64, KirbyError> {
    match sign {
        1 | -1 => Ok(sign),
        _ => Err(KirbyError::BadSign(sign)),
    }
}

/// Replaces a `sign/(2k+1)`-framed unknot `U1` by a split pair framed `+1` and `-1`.
pub fn procedure1(k: u64, sign: i64) -> Result<MoveLog, KirbyError> {
    let s = unit_sign(sign)?;
    if k < 1 {
        return Err(KirbyError::BadK);
    }
    let odd = 2 * k as i64 + 1;
    let initial = SurgeryDiagram::unlinked(vec![Rational::new(s.into(), odd.into())]);
    let mut log = MoveLog::start(initial);
    log.push(KirbyMove::ReverseSlamDunk {
        component: 0,
        integer_framing: 0,
    })?;
    reduce_leaf(&mut log, 0, 1, s, k)?;
    Ok(log)
}

/// Slides `leaf` over `base` `slides` times with sign `s`, then `base` over `leaf`
/// to cancel their linking.
fn reduce_leaf(
    log: &mut MoveLog,
    base: usize,
    leaf: usize,
    s: i64,
    slides: u64,
) -> Result<(), KirbyError> {
    for _ in 0..slides {
        log.push(KirbyMove::HandleSlide {
            i: leaf,
            over: base,
            sign: s,
        })?;
        log.note(format!(
            "U{leaf} is again an unknot linked once with U{base}"
        ));
    }
    let d = &log.final_diagram;
    let f = d.integer_framing(leaf)?;
    let sign = -d.lk(base, leaf) * f;
    log.push(KirbyMove::HandleSlide {
        i: base,
        over: leaf,
        sign,
    })?;
    log.note(format!("U{base} and U{leaf} are unlinked"));
    Ok(())
}

/// Replaces a `sign/(2k)`-framed unknot, using a `sign`-framed helper `U3`, by three split
/// components framed `sign`, `sign`, `-sign`.
pub fn procedure2(k: u64, sign: i64) -> Result<MoveLog, KirbyError> {
    let s = unit_sign(sign)?;
    if k < 1 {
        return Err(KirbyError::BadK);
    }
    let even = 2 * k as i64;
    let initial = SurgeryDiagram::unlinked(vec![Rational::new(s.into(), even.into()), int(s)]);
    let (u1, u3, u2) = (0, 1, 2);
    let mut log = MoveLog::start(initial);
    log.push(KirbyMove::ReverseSlamDunk {
        component: u1,
        integer_framing: 0,
    })?;
    log.push(KirbyMove::HandleSlide {
        i: u2,
        over: u3,
        sign: s,
    })?;
    let d = &log.final_diagram;
    let unlink = -d.lk(u2, u3) * d.lk(u1, u2);
    log.push(KirbyMove::HandleSlide {
        i: u3,
        over: u1,
        sign: unlink,
    })?;
    log.note(format!("U{u3} is unlinked from U{u1} and U{u2}"));
    reduce_leaf(&mut log, u1, u2, s, k - 1)?;
    Ok(log)
}

/// Upper bound on the untwisting number from a list of signed full-twist counts.
pub fn untwist_upper_bound(moves: &[i64]) -> Result<u64, KirbyError> {
    if moves.is_empty() {
        return Err(KirbyError::NoMoves);
    }
    if let Some(i) = moves.iter().position(|m| *m == 0) {
        return Err(KirbyError::ZeroMove(i));
    }
    let len = moves.len() as u64;
    if moves.iter().all(|m| m.is_even()) {
        return Ok(2 * len + 1);
    }
    Ok(moves.iter().map(|m| if m.abs() == 1 { 1 } else { 2 }).sum())
}
