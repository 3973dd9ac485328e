//! Continued fractions, two-bridge fractions and the lens-space linking form.
//!
//! A two-bridge knot with fraction `p/q` has double branched cover `L(p, q)`, whose
//! linking form is `l(tμ, tμ) = t²q/p`. If the knot has algebraic unknotting number one
//! then some generator has `l(h, h) = ±2/p`; [`bf_obstruction`] searches for one.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::LaurentPoly;
use crate::{BigInt, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwoBridgeError {
    #[error("empty continued fraction")]
    Empty,
    #[error("zero denominator while evaluating the continued fraction")]
    ZeroDenominator,
    #[error("p must be an odd integer >= 3, got {0}")]
    BadModulus(String),
    #[error("q = {q} is not coprime to p = {p}")]
    NotCoprime { p: u64, q: u64 },
    #[error("t = {t} is not a generator: gcd(t, {p}) != 1")]
    NotGenerator { t: i64, p: u64 },
}

/// `a₀ + 1/(a₁ + 1/(a₂ + ...))`.
pub fn cf_to_fraction(terms: &[i64]) -> Result<Rational, TwoBridgeError> {
    let (last, rest) = terms.split_last().ok_or(TwoBridgeError::Empty)?;
    let mut x = Rational::from_integer(BigInt::from(*last));
    for a in rest.iter().rev() {
        if x.is_zero() {
            return Err(TwoBridgeError::ZeroDenominator);
        }
        x = Rational::from_integer(BigInt::from(*a)) + x.recip();
    }
    Ok(x)
}

/// Fraction `p/q` of a two-bridge knot: `p` odd, `0 < q < p`, `gcd(p, q) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoBridgeFraction {
    p: u64,
    q: u64,
}

impl TwoBridgeFraction {
    /// Reduces `q` modulo `p`.
    pub fn new(p: i64, q: i64) -> Result<Self, TwoBridgeError> {
        if p < 3 || p % 2 == 0 {
            return Err(TwoBridgeError::BadModulus(p.to_string()));
        }
        let q = q.rem_euclid(p) as u64;
        let p = p as u64;
        if q.gcd(&p) != 1 {
            return Err(TwoBridgeError::NotCoprime { p, q });
        }
        Ok(Self { p, q })
    }

    /// From the value of a continued fraction: `p = |numerator|`, `q = denominator`.
    pub fn from_rational(r: &Rational) -> Result<Self, TwoBridgeError> {
        use num_traits::{Signed, ToPrimitive};
        let p = r
            .numer()
            .abs()
            .to_i64()
            .ok_or_else(|| TwoBridgeError::BadModulus(r.numer().to_string()))?;
        let q = r
            .denom()
            .to_i64()
            .expect("denominator fits when numerator does");
        Self::new(p, q)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q⁻¹ mod p`; `p/q` and `p/q⁻¹` are the same knot.
    pub fn inverse(&self) -> Self {
        Self {
            p: self.p,
            q: mod_inverse(self.q, self.p).expect("coprime"),
        }
    }

    /// `p/(p - q)`, the mirror image.
    pub fn mirror(&self) -> Self {
        Self {
            p: self.p,
            q: self.p - self.q,
        }
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Element `numerator/modulus` of `ℚ/ℤ`, reduced with `0 ≤ numerator < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkingValue {
    pub numerator: u64,
    pub modulus: u64,
}

impl LinkingValue {
    pub fn new(numerator: i128, modulus: u64) -> Self {
        let n = numerator.rem_euclid(modulus as i128) as u64;
        let g = n.gcd(&modulus);
        Self {
            numerator: n / g,
            modulus: modulus / g,
        }
    }
}

impl fmt::Display for LinkingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.modulus)
    }
}

/// `l(tμ, tμ) = t²q/p` in `ℚ/ℤ`.
pub fn linking_self(f: &TwoBridgeFraction, t: i64) -> Result<LinkingValue, TwoBridgeError> {
    let p = f.p as i128;
    if (t as i128).gcd(&p) != 1 {
        return Err(TwoBridgeError::NotGenerator { t, p: f.p });
    }
    let tr = (t as i128).rem_euclid(p);
    Ok(LinkingValue::new(tr * tr % p * f.q as i128, f.p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum BfOutcome {
    /// `witness² q ≡ sign·2 (mod p)`.
    Satisfiable {
        witness: u64,
        sign: i8,
    },
    Obstructed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfVerdict {
    #[serde(flatten)]
    pub outcome: BfOutcome,
    pub checked_modulus: u64,
}

impl BfVerdict {
    pub fn is_obstructed(&self) -> bool {
        self.outcome == BfOutcome::Obstructed
    }
}

/// Exhaustive search for the least generator `t` with `t²q ≡ ±2 (mod p)`.
///
/// `Obstructed` certifies algebraic unknotting number at least two.
pub fn bf_obstruction(f: &TwoBridgeFraction) -> BfVerdict {
    let (p, q) = (f.p as u128, f.q as u128);
    let plus = 2 % p;
    let minus = (p - 2) % p;
    let outcome = (1..p)
        .filter(|t| t.gcd(&p) == 1)
        .find_map(|t| {
            let r = t * t % p * q % p;
            if r == plus {
                Some(BfOutcome::Satisfiable {
                    witness: t as u64,
                    sign: 1,
                })
            } else if r == minus {
                Some(BfOutcome::Satisfiable {
                    witness: t as u64,
                    sign: -1,
                })
            } else {
                None
            }
        })
        .unwrap_or(BfOutcome::Obstructed);
    BfVerdict {
        outcome,
        checked_modulus: f.p,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShortcutResult {
    Obstructed,
    Inconclusive,
}

/// Reduction of the search modulo the factor 5 of `p`: neither `±2q⁻¹` a nonzero square mod 5.
pub fn mod5_shortcut(p: i64, q: i64) -> ShortcutResult {
    if p % 5 != 0 {
        return ShortcutResult::Inconclusive;
    }
    let Some(inv) = mod_inverse(q.rem_euclid(5) as u64, 5) else {
        return ShortcutResult::Inconclusive;
    };
    let squares = [1, 4];
    let plus = 2 * inv % 5;
    let minus = 3 * inv % 5;
    if squares.contains(&plus) || squares.contains(&minus) {
        ShortcutResult::Inconclusive
    } else {
        ShortcutResult::Obstructed
    }
}

/// `Δ(t) = Σ_{k<p} (-1)^k t^{ε₁+...+ε_k}` with `ε_i = (-1)^⌊iq'/p⌋` and `q'` the odd
/// representative of `q`, normalised.
pub fn two_bridge_alexander(f: &TwoBridgeFraction) -> LaurentPoly {
    let p = f.p as i64;
    let q = f.q as i64;
    let q_odd = if q % 2 == 1 { q } else { q - p };
    let mut exp = 0i64;
    let mut terms = Vec::with_capacity(f.p as usize);
    for k in 0..p {
        if k > 0 {
            exp += if (k * q_odd).div_euclid(p) % 2 == 0 {
                1
            } else {
                -1
            };
        }
        terms.push((
            exp,
            if k % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            },
        ));
    }
    LaurentPoly::from_terms(terms)
        .normalize_symmetric()
        .expect("two-bridge Alexander polynomial")
}
