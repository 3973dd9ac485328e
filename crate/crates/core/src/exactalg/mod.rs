//! Exact algebra: Gaussian rationals, Hermitian inertia by pivoted LDL*, integer
//! polynomials and Sturm-sequence real root isolation.

mod gaussian;
mod hermitian;
mod sturm;
mod upoly;

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use gaussian::GaussianRational;
pub use hermitian::{determinant, ldlstar_inertia, ldlstar_signature, HermitianMatrix, Inertia};
pub use sturm::{
    isolate_square_free, same_root, sturm_isolate_roots, IsolatingInterval, SturmChain,
};
pub use upoly::IntPoly;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactAlgError {
    #[error("zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("empty range")]
    EmptyRange,
    #[error("entry count does not match dimension")]
    Shape,
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
}

/// Point `ω = ((1 - s²) + 2s·i) / (1 + s²)` on the unit circle.
///
/// `s > 0` is the open upper semicircle, `s = 0` is `ω = 1`; `ω = -1` is the limit
/// `s → ∞` and is not represented.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitCirclePoint {
    pub s: Rational,
    pub omega: GaussianRational,
}

pub fn circle_point(s: &Rational) -> UnitCirclePoint {
    let one = Rational::one();
    let s2 = s * s;
    let den = &one + &s2;
    let re = (&one - &s2) / &den;
    let im = (Rational::from_integer(2.into()) * s) / den;
    UnitCirclePoint {
        s: s.clone(),
        omega: GaussianRational::new(re, im),
    }
}

impl UnitCirclePoint {
    /// Angle parameter `t ∈ [0, 1/2)` with `ω = e^{2πit}`, at plotting precision.
    pub fn turn_fraction(&self) -> f64 {
        s_to_turn_fraction(rational_to_f64(&self.s))
    }
}

/// `t = atan(s)/π`, so that `ω(s) = e^{2πit}`.
pub fn s_to_turn_fraction(s: f64) -> f64 {
    s.atan() / std::f64::consts::PI
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    // Scale to keep precision for very large or small numerators and denominators.
    let n = r.numer();
    let d = r.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb - db) - 60;
    let scaled: Rational = if shift > 0 {
        r / Rational::from_integer(num_bigint::BigInt::one() << shift as usize)
    } else {
        r * Rational::from_integer(num_bigint::BigInt::one() << (-shift) as usize)
    };
    let v = scaled.to_integer().to_f64().unwrap_or(f64::NAN);
    if r.is_zero() {
        0.0
    } else {
        v * 2f64.powi(shift as i32)
    }
}

/// Serde adapter writing rationals as exact `"p/q"` strings.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::rational_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        crate::parse_rational(&text)
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))
    }
}

/// Serde adapter for optional rationals (`null` meaning +∞ where used).
pub mod opt_rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&crate::rational_to_string(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let text: Option<String> = Option::deserialize(d)?;
        text.map(|t| {
            crate::parse_rational(&t)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
        })
        .transpose()
    }
}
