//! Seifert-matrix invariants: Alexander polynomial, determinant, Levine–Tristram
//! signatures and the exact signature step function.

mod step;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{
    circle_point, determinant as gdet, ldlstar_signature, GaussianRational, HermitianMatrix,
    IntPoly,
};
use crate::poly::LaurentPoly;
use crate::Rational;

pub use step::{power_parts, Jump, PointValue, Segment, SignatureStepFunction};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("not a Seifert matrix: {0}")]
    NotSeifert(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// Square integer matrix `V` of even size with `det(V - Vᵀ) = 1`. The 0×0 matrix is the unknot.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SeifertMatrix {
    n: usize,
    v: Vec<i64>,
}

/// Where on the circle a signature is taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CirclePoint {
    /// `ω = circle_point(s)`.
    S(Rational),
    MinusOne,
}

impl TryFrom<Vec<Vec<i64>>> for SeifertMatrix {
    type Error = SeifertError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, SeifertError> {
        validate_seifert(&rows)
    }
}

impl From<SeifertMatrix> for Vec<Vec<i64>> {
    fn from(m: SeifertMatrix) -> Self {
        m.rows()
    }
}

/// Accepts `rows` iff it is square of even size with `det(V - Vᵀ) = 1`.
pub fn validate_seifert(rows: &[Vec<i64>]) -> Result<SeifertMatrix, SeifertError> {
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(SeifertError::NotSeifert(format!(
            "row {i} has {} entries, expected {n}",
            r.len()
        )));
    }
    if !n.is_multiple_of(2) {
        return Err(SeifertError::NotSeifert(format!("odd dimension {n}")));
    }
    let m = SeifertMatrix {
        n,
        v: rows.iter().flatten().copied().collect(),
    };
    let d = int_det(n, |i, j| m.get(i, j) - m.get(j, i));
    if !d.is_one() {
        return Err(SeifertError::NotSeifert(format!(
            "det(V - V^T) = {d}, expected 1"
        )));
    }
    Ok(m)
}

fn int_det(n: usize, f: impl Fn(usize, usize) -> i64) -> BigInt {
    let entries: Vec<GaussianRational> = (0..n * n)
        .map(|k| GaussianRational::from_int(f(k / n, k % n)))
        .collect();
    gdet(n, &entries).re().to_integer()
}

impl SeifertMatrix {
    pub fn unknot() -> Self {
        Self { n: 0, v: vec![] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Genus of the underlying surface.
    pub fn genus(&self) -> usize {
        self.n / 2
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.v[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.v
            .chunks(self.n.max(1))
            .map(|r| r.to_vec())
            .take(self.n)
            .collect()
    }

    /// `det(tV - Vᵀ)` normalised to the symmetric representative with value 1 at `t = 1`.
    pub fn alexander(&self) -> LaurentPoly {
        if self.n == 0 {
            return LaurentPoly::one();
        }
        let n = self.n;
        let points: Vec<(i64, Rational)> = (0..=n as i64)
            .map(|t| {
                let d = int_det(n, |i, j| t * self.get(i, j) - self.get(j, i));
                (t, Rational::from_integer(d))
            })
            .collect();
        let p = IntPoly::interpolate(&points).expect("integer determinant polynomial");
        let lp = LaurentPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(e, c)| (e as i64, c.clone())),
        );
        lp.normalize_symmetric()
            .expect("det(V - V^T) = 1 gives a symmetrizable polynomial")
    }

    /// `|det(V + Vᵀ)| = |Δ(-1)|`, always odd.
    pub fn determinant(&self) -> Result<BigInt, SeifertError> {
        let direct = int_det(self.n, |i, j| self.get(i, j) + self.get(j, i)).abs();
        let via_alexander = self.alexander().at_minus_one().abs();
        if direct != via_alexander {
            return Err(SeifertError::Inconsistent(format!(
                "|det(V + V^T)| = {direct} but |Δ(-1)| = {via_alexander}"
            )));
        }
        if direct.is_even() {
            return Err(SeifertError::Inconsistent(format!(
                "even determinant {direct}"
            )));
        }
        Ok(direct)
    }

    /// `(1 - ω)V + (1 - ω̄)Vᵀ` at `ω = circle_point(s)`.
    pub fn form_at(&self, s: &Rational) -> HermitianMatrix {
        let omega = circle_point(s).omega;
        let one = GaussianRational::one();
        let a = &one - &omega;
        let b = a.conj();
        let n = self.n;
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let x = a.scale_int(&BigInt::from(self.get(i, j)));
                let y = b.scale_int(&BigInt::from(self.get(j, i)));
                &x + &y
            })
            .collect();
        HermitianMatrix::new(n, entries).expect("Levine–Tristram form is Hermitian")
    }

    /// `V + Vᵀ` as a Hermitian matrix (the form at `ω = -1` up to the factor 2).
    pub fn symmetrized(&self) -> HermitianMatrix {
        let n = self.n;
        let e: Vec<i64> = (0..n * n)
            .map(|k| self.get(k / n, k % n) + self.get(k % n, k / n))
            .collect();
        HermitianMatrix::from_symmetric_i64(n, &e).expect("symmetric")
    }

    /// Exact `(signature, nullity)` of the Levine–Tristram form at `point`.
    pub fn signature_at(&self, point: &CirclePoint) -> (i64, usize) {
        match point {
            CirclePoint::MinusOne => ldlstar_signature(&self.symmetrized()),
            CirclePoint::S(s) => ldlstar_signature(&self.form_at(s)),
        }
    }

    /// `det(s(V + Vᵀ) - i(V - Vᵀ))`, an even integer polynomial in `s`.
    ///
    /// Equals `det((1 - ω)V + (1 - ω̄)Vᵀ) · ((1 + s²) / 2s)^n`, so its positive roots are
    /// exactly the `s` where the form degenerates.
    pub fn jump_polynomial(&self) -> IntPoly {
        let n = self.n;
        if n == 0 {
            return IntPoly::constant(BigInt::one());
        }
        let points: Vec<(i64, Rational)> = (0..=n as i64)
            .map(|s| {
                let entries: Vec<GaussianRational> = (0..n * n)
                    .map(|k| {
                        let (i, j) = (k / n, k % n);
                        let sym = self.get(i, j) + self.get(j, i);
                        let skew = self.get(i, j) - self.get(j, i);
                        GaussianRational::new(
                            Rational::from_integer((s * sym).into()),
                            Rational::from_integer((-skew).into()),
                        )
                    })
                    .collect();
                let d = gdet(n, &entries);
                debug_assert!(d.is_real());
                (s, d.re().clone())
            })
            .collect();
        IntPoly::interpolate(&points).expect("integer jump polynomial")
    }

    /// Exact signature step function on the upper semicircle.
    pub fn signature_function(&self) -> SignatureStepFunction {
        let (v, nul) = self.signature_at(&CirclePoint::MinusOne);
        SignatureStepFunction::build(&self.jump_polynomial(), (v, nul), |s| {
            self.signature_at(&CirclePoint::S(s.clone())).0
        })
    }

    /// Block-diagonal sum; models connected sum.
    pub fn block_sum(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut v = vec![0; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                v[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                v[(i + self.n) * n + j + self.n] = other.get(i, j);
            }
        }
        Self { n, v }
    }

    /// `-Vᵀ`, a Seifert matrix of the mirror image.
    pub fn mirror(&self) -> Self {
        let n = self.n;
        let v = (0..n * n).map(|k| -self.get(k % n, k / n)).collect();
        Self { n, v }
    }

    /// Elementary enlargement (S-equivalence stabilisation) by the column `xi`.
    ///
    /// `transpose_variant = false` gives `[[V, ξ, 0], [0, 0, 1], [0, 0, 0]]`,
    /// `true` gives `[[V, 0, 0], [ξᵀ, 0, 0], [0, 1, 0]]`.
    pub fn elementary_enlargement(&self, xi: &[i64], transpose_variant: bool) -> Self {
        assert_eq!(xi.len(), self.n);
        let n = self.n + 2;
        let mut v = vec![0; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                v[i * n + j] = self.get(i, j);
            }
        }
        if transpose_variant {
            for (j, x) in xi.iter().enumerate() {
                v[self.n * n + j] = *x;
            }
            v[(self.n + 1) * n + self.n] = 1;
        } else {
            for (i, x) in xi.iter().enumerate() {
                v[i * n + self.n] = *x;
            }
            v[self.n * n + self.n + 1] = 1;
        }
        Self { n, v }
    }
}

impl fmt::Debug for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertMatrix{:?}", self.rows())
    }
}
