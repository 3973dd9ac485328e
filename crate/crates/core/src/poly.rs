//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::GaussianRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("not an Alexander polynomial: {0}")]
    NotAlexander(&'static str),
    #[error("substitution power must be positive, got {0}")]
    NonPositivePower(i64),
    #[error("evaluation point and supplied inverse do not multiply to 1")]
    BadInverse,
}

/// Integer Laurent polynomial stored as a sparse exponent -> coefficient map.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithKind {
    Add,
    Mul,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        Self::from_terms([(exp, coeff.into())])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn arith(&self, other: &Self, kind: ArithKind) -> Self {
        match kind {
            ArithKind::Add => self.add(other),
            ArithKind::Mul => self.mul(other),
        }
    }

    /// `t^k * self`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// `a(t) -> a(t^n)`.
    pub fn substitute_power(&self, n: i64) -> Result<Self, PolyError> {
        if n <= 0 {
            return Err(PolyError::NonPositivePower(n));
        }
        Ok(Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * n, c.clone()))
                .collect(),
        })
    }

    /// `a(t) -> a(t^-1)`.
    pub fn reflect(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.reflect()
    }

    pub fn eval_int(&self, x: i64) -> crate::Rational {
        let x = crate::Rational::from_integer(BigInt::from(x));
        let mut acc = crate::Rational::zero();
        for (e, c) in self.terms() {
            let xe = if e >= 0 {
                num_traits::pow::pow(x.clone(), e as usize)
            } else {
                num_traits::pow::pow(x.recip(), (-e) as usize)
            };
            acc += xe * crate::Rational::from_integer(c.clone());
        }
        acc
    }

    /// Value at `t = 1` (always an integer).
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Value at `t = -1` (always an integer).
    pub fn at_minus_one(&self) -> BigInt {
        self.terms()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c })
            .sum()
    }

    /// Canonical symmetric representative `±t^k a` with `f(t) = f(t^-1)` and `f(1) = 1`.
    pub fn normalize_symmetric(&self) -> Result<Self, PolyError> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(PolyError::NotAlexander("zero polynomial")),
        };
        let at_one = self.at_one();
        if at_one.abs() != BigInt::one() {
            return Err(PolyError::NotAlexander("value at t = 1 is not ±1"));
        }
        if (lo + hi).rem_euclid(2) != 0 {
            return Err(PolyError::NotAlexander("odd exponent span"));
        }
        let mut out = self.shift(-(lo + hi) / 2);
        if at_one.is_negative() {
            out = out.neg();
        }
        if !out.is_symmetric() {
            return Err(PolyError::NotAlexander("no symmetric representative"));
        }
        Ok(out)
    }

    /// Exact value `Σ c_e z^e`; `z_inverse` supplies `z^-1` for negative exponents.
    pub fn eval(
        &self,
        z: &GaussianRational,
        z_inverse: &GaussianRational,
    ) -> Result<GaussianRational, PolyError> {
        if !(z * z_inverse).is_one() {
            return Err(PolyError::BadInverse);
        }
        let mut acc = GaussianRational::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 { z } else { z_inverse };
            let term = base.pow(e.unsigned_abs()).scale_int(c);
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Pairs `[exponent, coefficient]` sorted by exponent.
    pub fn to_pairs(&self) -> Vec<(i64, BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c.clone())).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{e}")?,
                _ => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

// JSON form: [[exponent, "coefficient"], ...] sorted by exponent.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self
            .coeffs
            .iter()
            .map(|(e, c)| (*e, c.to_string()))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}
