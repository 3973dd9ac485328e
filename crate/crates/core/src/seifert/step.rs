use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactalg::{same_root, sturm_isolate_roots, IntPoly, IsolatingInterval};
use crate::Rational;

/// Maximal open stretch of constant signature.
///
/// `lo` and `hi` are the rational endpoints of the neighbouring jump intervals, so the
/// segment certainly contains `[lo, hi]`; `hi = None` means the segment runs to `s = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    #[serde(with = "crate::exactalg::rational_str")]
    pub lo: Rational,
    #[serde(with = "crate::exactalg::opt_rational_str")]
    pub hi: Option<Rational>,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Jump {
    /// Isolates one root of the step function's jump polynomial.
    pub interval: IsolatingInterval,
    pub left: i64,
    pub right: i64,
    /// `(left + right) / 2`, the averaged value at the jump.
    pub average: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointValue {
    Regular(i64),
    /// `s` is a root of the jump polynomial; `left == right` when no jump happens there.
    Root {
        left: i64,
        right: i64,
    },
}

impl PointValue {
    pub fn regular(self) -> Option<i64> {
        match self {
            PointValue::Regular(v) => Some(v),
            PointValue::Root { .. } => None,
        }
    }
}

/// Exact piecewise-constant signature function on the upper semicircle, in the
/// parameter `s ∈ (0, ∞)` of [`crate::exactalg::circle_point`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureStepFunction {
    pub segments: Vec<Segment>,
    pub jumps: Vec<Jump>,
    pub value_at_minus_one: i64,
    pub nullity_at_minus_one: usize,
    /// Square-free, even, positive roots are every point where the form may degenerate.
    pub jump_polynomial: IntPoly,
}

fn reduce(p: &IntPoly) -> IntPoly {
    if p.is_zero() {
        return IntPoly::constant(BigInt::one());
    }
    p.square_free().strip_one_plus_x2()
}

impl SignatureStepFunction {
    /// Zero function (the unknot).
    pub fn zero() -> Self {
        Self {
            segments: vec![Segment {
                lo: Rational::zero(),
                hi: None,
                value: 0,
            }],
            jumps: vec![],
            value_at_minus_one: 0,
            nullity_at_minus_one: 0,
            jump_polynomial: IntPoly::constant(BigInt::one()),
        }
    }

    /// Builds the step function from a polynomial whose positive roots contain every
    /// degeneracy point, sampling `value` once in each complementary interval.
    pub fn build<F>(poly: &IntPoly, minus_one: (i64, usize), value: F) -> Self
    where
        F: Fn(&Rational) -> i64 + Sync,
    {
        let p = reduce(poly);
        let mut roots = if p.is_constant() {
            vec![]
        } else {
            let bound = p.cauchy_bound() + Rational::one();
            sturm_isolate_roots(&p, &Rational::zero(), &bound).expect("nonzero polynomial")
        };
        let mut samples = Vec::with_capacity(roots.len() + 1);
        if let Some(first) = roots.first_mut() {
            while first.lo.is_zero() {
                first.bisect(&p);
            }
            samples.push(first.lo.clone());
            samples.extend(roots.iter().map(|r| r.hi.clone()));
        } else {
            samples.push(Rational::one());
        }
        let values: Vec<i64> = samples.par_iter().map(&value).collect();

        let mut segments = vec![Segment {
            lo: Rational::zero(),
            hi: None,
            value: values[0],
        }];
        let mut jumps = Vec::new();
        for (i, root) in roots.into_iter().enumerate() {
            let (left, right) = (values[i], values[i + 1]);
            if left == right {
                continue;
            }
            segments.last_mut().unwrap().hi = Some(root.lo.clone());
            segments.push(Segment {
                lo: root.hi.clone(),
                hi: None,
                value: right,
            });
            jumps.push(Jump {
                interval: root,
                left,
                right,
                average: (left + right) / 2,
            });
        }
        Self {
            segments,
            jumps,
            value_at_minus_one: minus_one.0,
            nullity_at_minus_one: minus_one.1,
            jump_polynomial: p,
        }
    }

    /// Signature at `circle_point(s)`; negative `s` folds onto the upper semicircle.
    pub fn value_at(&self, s: &Rational) -> PointValue {
        if s.is_zero() {
            return PointValue::Regular(0);
        }
        let s = s.abs();
        let mut pos = 0;
        for (j, jump) in self.jumps.iter().enumerate() {
            match jump.interval.compare_root(&self.jump_polynomial, &s) {
                Ordering::Less => break,
                Ordering::Equal => {
                    return PointValue::Root {
                        left: jump.left,
                        right: jump.right,
                    }
                }
                Ordering::Greater => pos = j + 1,
            }
        }
        let v = self.segments[pos].value;
        if self.jump_polynomial.sign_at(&s) == Ordering::Equal {
            PointValue::Root { left: v, right: v }
        } else {
            PointValue::Regular(v)
        }
    }

    /// Every value taken off the jump points, including at `ω = -1`.
    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.segments
            .iter()
            .map(|s| s.value)
            .chain(std::iter::once(self.value_at_minus_one))
    }

    pub fn takes_positive(&self) -> bool {
        self.values().any(|v| v > 0)
    }

    pub fn takes_negative(&self) -> bool {
        self.values().any(|v| v < 0)
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values().all(|v| v == 0)
    }

    /// Signature function of the mirror image.
    pub fn negate(&self) -> Self {
        let mut out = self.clone();
        for s in &mut out.segments {
            s.value = -s.value;
        }
        for j in &mut out.jumps {
            j.left = -j.left;
            j.right = -j.right;
            j.average = -j.average;
        }
        out.value_at_minus_one = -out.value_at_minus_one;
        out
    }

    /// Pointwise sum; models connected sum.
    pub fn sum(&self, other: &Self) -> Self {
        let p = self.jump_polynomial.mul(&other.jump_polynomial);
        Self::build(
            &p,
            (
                self.value_at_minus_one + other.value_at_minus_one,
                self.nullity_at_minus_one + other.nullity_at_minus_one,
            ),
            |s| {
                let a = self.value_at(s).regular().expect("sample off the roots");
                let b = other.value_at(s).regular().expect("sample off the roots");
                a + b
            },
        )
    }

    /// `ω ↦ σ(ωⁿ)`: the signature function of the `(n,1)`-cable.
    pub fn cable_pullback(&self, n: u32) -> Self {
        assert!(n >= 1, "cable parameter must be positive");
        if n == 1 {
            return self.clone();
        }
        let (re, im) = power_parts(n);
        let g = self.jump_polynomial.compose_fraction(&im, &re);
        let minus_one = if n % 2 == 1 {
            (self.value_at_minus_one, self.nullity_at_minus_one)
        } else {
            (0, 0)
        };
        Self::build(&g, minus_one, |s| self.pulled_value(&re, &im, s))
    }

    fn pulled_value(&self, re: &IntPoly, im: &IntPoly, s: &Rational) -> i64 {
        let pr = re.eval(s);
        let qi = im.eval(s);
        if qi.is_zero() {
            return 0;
        }
        if pr.is_zero() {
            return self.value_at_minus_one;
        }
        self.value_at(&(qi / pr))
            .regular()
            .expect("sample off the pulled-back roots")
    }

    /// Equality as functions: same values and jumps at the same algebraic points.
    pub fn same_as(&self, other: &Self) -> bool {
        self.value_at_minus_one == other.value_at_minus_one
            && self.segments.len() == other.segments.len()
            && self
                .segments
                .iter()
                .zip(&other.segments)
                .all(|(a, b)| a.value == b.value)
            && self.jumps.iter().zip(&other.jumps).all(|(a, b)| {
                same_root(
                    &self.jump_polynomial,
                    &a.interval,
                    &other.jump_polynomial,
                    &b.interval,
                )
            })
    }

    /// Jump locations as `s` values at `f64` precision.
    pub fn jump_points_approx(&self) -> Vec<f64> {
        self.jumps
            .iter()
            .map(|j| j.interval.approx(&self.jump_polynomial))
            .collect()
    }
}

/// Real and imaginary parts of `(1 + is)ⁿ` as integer polynomials in `s`.
///
/// `ω(s)ⁿ = ω(im/re)`, so `im/re` is the parameter of the image point.
pub fn power_parts(n: u32) -> (IntPoly, IntPoly) {
    let mut re = vec![BigInt::zero(); n as usize + 1];
    let mut im = vec![BigInt::zero(); n as usize + 1];
    let mut binom = BigInt::one();
    for k in 0..=n as usize {
        let c = match k % 4 {
            0 | 1 => binom.clone(),
            _ => -binom.clone(),
        };
        if k % 2 == 0 {
            re[k] = c;
        } else {
            im[k] = c;
        }
        binom = binom * BigInt::from(n as usize - k) / BigInt::from(k + 1);
    }
    (IntPoly::new(re), IntPoly::new(im))
}
