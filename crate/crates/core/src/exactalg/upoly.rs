use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Dense univariate integer polynomial, coefficients in ascending degree order.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in o.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(BigInt::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    /// Exact value at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` without building fractions: evaluates the homogenised form.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let (a, b) = (x.numer(), x.denom());
        let d = match self.degree() {
            Some(d) => d,
            None => return Ordering::Equal,
        };
        // Σ c_k a^k b^(d-k); b > 0 so the sign matches p(a/b).
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        let mut terms = Vec::with_capacity(d + 1);
        for k in (0..=d).rev() {
            terms.push((k, bpow.clone()));
            bpow *= b;
        }
        let mut apow = BigInt::one();
        let mut powers_a = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            powers_a.push(apow.clone());
            apow *= a;
        }
        for (k, bp) in terms {
            let c = &self.coeffs[k];
            if !c.is_zero() {
                acc += c * &powers_a[k] * bp;
            }
        }
        acc.sign_ordering()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        let mut g = self.content();
        if self.leading().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Divides out the positive content, keeping every sign.
    pub fn sign_preserving_primitive(&self) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        let g = self.content();
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Remainder of `self` by `b`, scaled by a positive constant.
    ///
    /// The result has the same sign as the true rational remainder at every point.
    pub fn positive_pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("division by zero polynomial");
        let lc = b.leading().unwrap().clone();
        let lc_abs = lc.abs();
        let sign = if lc.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let mut r = self.clone();
        // r <- |lc| r - (lc_r * sign) x^k b keeps the multiplier positive.
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            let shift = dr - db;
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc_abs).collect();
            let factor = &lr * &sign;
            for (i, c) in b.coeffs.iter().enumerate() {
                next[i + shift] -= c * &factor;
            }
            r = Self::new(next).sign_preserving_primitive();
        }
        r
    }

    /// Monic-up-to-content gcd (primitive, positive leading coefficient).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Division over the rationals; returns `(quotient, remainder)` with rational coefficients.
    fn div_rem_rational(&self, b: &Self) -> (Vec<Rational>, Vec<Rational>) {
        let db = b.degree().expect("division by zero polynomial");
        let lc = Rational::from_integer(b.leading().unwrap().clone());
        let mut r: Vec<Rational> = self
            .coeffs
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let coef = &r[dr] / &lc;
            let shift = dr - db;
            for (i, c) in b.coeffs.iter().enumerate() {
                r[i + shift] -= &coef * Rational::from_integer(c.clone());
            }
            q[shift] = coef;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (q, r)
    }

    /// Exact quotient `self / b`, scaled to a primitive integer polynomial with the
    /// sign of the rational quotient's leading coefficient. `None` if `b` does not divide.
    pub fn div_exact_primitive(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_rational(b);
        if !r.is_empty() {
            return None;
        }
        Some(rational_to_primitive(&q))
    }

    pub fn divides(&self, p: &Self) -> bool {
        p.div_rem_rational(self).1.is_empty()
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn square_free(&self) -> Self {
        if self.is_constant() {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact_primitive(&g)
            .expect("gcd divides")
            .primitive()
    }

    /// Removes every factor `1 + x^2` (no real roots).
    pub fn strip_one_plus_x2(&self) -> Self {
        let f = Self::from_i64(&[1, 0, 1]);
        let mut p = self.clone();
        while !p.is_zero() && p.degree().unwrap() >= 2 && f.divides(&p) {
            p = p.div_exact_primitive(&f).unwrap();
        }
        p
    }

    /// Removes a root at the rational `x`, if there is one (applied once).
    pub fn deflate_at(&self, x: &Rational) -> Self {
        if self.sign_at(x) != Ordering::Equal {
            return self.clone();
        }
        let lin = Self::new(vec![-x.numer().clone(), x.denom().clone()]);
        self.div_exact_primitive(&lin)
            .expect("rational root divides")
    }

    /// Upper bound on the absolute value of every real root: `1 + max |a_i / a_n|`.
    pub fn cauchy_bound(&self) -> Rational {
        let lc = Rational::from_integer(self.leading().expect("nonzero").abs());
        let m = self
            .coeffs
            .iter()
            .rev()
            .skip(1)
            .map(|c| Rational::from_integer(c.abs()) / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    /// `Σ c_k num^k den^(d-k)` for `d = deg self`: clears denominators of `self(num/den)`.
    pub fn compose_fraction(&self, num: &Self, den: &Self) -> Self {
        let d = match self.degree() {
            Some(d) => d,
            None => return Self::default(),
        };
        let mut num_pows = vec![Self::constant(BigInt::one())];
        let mut den_pows = vec![Self::constant(BigInt::one())];
        for _ in 0..d {
            num_pows.push(num_pows.last().unwrap().mul(num));
            den_pows.push(den_pows.last().unwrap().mul(den));
        }
        let mut acc = Self::default();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&num_pows[k].mul(&den_pows[d - k]).scale(c));
        }
        acc
    }

    /// Newton interpolation through `(x_i, y_i)` with distinct integer nodes.
    ///
    /// Returns `None` when the interpolant does not have integer coefficients.
    pub fn interpolate(points: &[(i64, Rational)]) -> Option<Self> {
        let n = points.len();
        let xs: Vec<Rational> = points
            .iter()
            .map(|(x, _)| Rational::from_integer(BigInt::from(*x)))
            .collect();
        let mut dd: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
            }
        }
        // Horner on the Newton basis.
        let mut acc: Vec<Rational> = vec![Rational::zero()];
        for i in (0..n).rev() {
            // acc = acc * (x - xs[i]) + dd[i]
            let mut next = vec![Rational::zero(); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * &xs[i];
            }
            next[0] += &dd[i];
            acc = next;
        }
        if acc.iter().any(|c| !c.is_integer()) {
            return None;
        }
        Some(Self::new(acc.into_iter().map(|c| c.to_integer()).collect()))
    }
}

fn rational_to_primitive(q: &[Rational]) -> IntPoly {
    let lcm = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    IntPoly::new(ints).sign_preserving_primitive()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let m = c.abs();
            match k {
                0 => write!(f, "{m}")?,
                1 => write!(f, "{m}s")?,
                _ => write!(f, "{m}s^{k}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for IntPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|c| c.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2)
        let p = IntPoly::from_i64(&[-1, 1])
            .pow(2)
            .mul(&IntPoly::from_i64(&[2, 1]));
        let sf = p.square_free();
        assert_eq!(
            sf,
            IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[2, 1]))
        );
        let g = p.gcd(&IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[5, 3])));
        assert_eq!(g, IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn sign_matches_eval() {
        let p = IntPoly::from_i64(&[3, -7, 0, 2]);
        for x in [q(1, 3), q(-5, 2), q(0, 1), q(7, 4), q(1, 1)] {
            assert_eq!(p.sign_at(&x), p.eval(&x).cmp(&Rational::zero()));
        }
    }

    #[test]
    fn pseudo_remainder_sign() {
        let a = IntPoly::from_i64(&[1, 2, 3, 4, 5]);
        let b = IntPoly::from_i64(&[1, 0, -3]);
        let r = a.positive_pseudo_rem(&b);
        // compare with the exact rational remainder at a few points
        let (_, rr) = a.div_rem_rational(&b);
        for x in [q(1, 2), q(-3, 1), q(5, 7)] {
            let exact: Rational = rr
                .iter()
                .rev()
                .fold(Rational::zero(), |acc, c| acc * &x + c);
            assert_eq!(r.sign_at(&x), exact.cmp(&Rational::zero()));
        }
    }

    #[test]
    fn interpolation_recovers() {
        let p = IntPoly::from_i64(&[4, -3, 0, 2, -1]);
        let pts: Vec<_> = (0..5).map(|x| (x, p.eval(&q(x, 1)))).collect();
        assert_eq!(IntPoly::interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn strip_and_deflate() {
        let p = IntPoly::from_i64(&[1, 0, 1])
            .pow(2)
            .mul(&IntPoly::from_i64(&[-1, 2]));
        assert_eq!(p.strip_one_plus_x2(), IntPoly::from_i64(&[-1, 2]));
        assert_eq!(p.deflate_at(&q(1, 2)), IntPoly::from_i64(&[1, 0, 1]).pow(2));
    }

    #[test]
    fn compose_fraction_clears_denominators() {
        // p(y) = y^2 - 2, y = (x+1)/x  ->  (x+1)^2 - 2x^2
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let c = p.compose_fraction(&IntPoly::from_i64(&[1, 1]), &IntPoly::x());
        assert_eq!(c, IntPoly::from_i64(&[1, 2, -1]));
    }
}
