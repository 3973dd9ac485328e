use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ExactAlgError, IntPoly};
use crate::Rational;

/// Open interval `(lo, hi)` holding exactly one root of the polynomial it was built for.
///
/// Neither endpoint is a root.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IsolatingInterval {
    #[serde(with = "crate::exactalg::rational_str")]
    pub lo: Rational,
    #[serde(with = "crate::exactalg::rational_str")]
    pub hi: Rational,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Position of `x` relative to the root, for the square-free polynomial `p`.
    pub fn compare_root(&self, p: &IntPoly, x: &Rational) -> Ordering {
        if x <= &self.lo {
            return Ordering::Less;
        }
        if x >= &self.hi {
            return Ordering::Greater;
        }
        let sx = p.sign_at(x);
        if sx == Ordering::Equal {
            Ordering::Equal
        } else if sx == p.sign_at(&self.lo) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Bisects until the width is at most `width`.
    pub fn refine(&mut self, p: &IntPoly, width: &Rational) {
        while &self.width() > width {
            self.bisect(p);
        }
    }

    /// One bisection step. An exact rational root at the midpoint collapses the
    /// interval to a quarter-width neighbourhood of it.
    pub fn bisect(&mut self, p: &IntPoly) {
        let mid = self.midpoint();
        let sm = p.sign_at(&mid);
        if sm == Ordering::Equal {
            let q = self.width() / Rational::from_integer(4.into());
            self.lo = &mid - &q;
            self.hi = &mid + q;
        } else if sm == p.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Rational approximation of the root as an `f64`, after refining a copy.
    pub fn approx(&self, p: &IntPoly) -> f64 {
        let mut c = self.clone();
        let w = Rational::new(1.into(), num_bigint::BigInt::from(1u64 << 52));
        let scale = Rational::one().max(c.hi.clone().abs_val());
        c.refine(p, &(w * scale));
        super::rational_to_f64(&c.midpoint())
    }
}

trait AbsVal {
    fn abs_val(self) -> Self;
}

impl AbsVal for Rational {
    fn abs_val(self) -> Self {
        if self < Rational::zero() {
            -self
        } else {
            self
        }
    }
}

/// Sturm chain of a square-free polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Self {
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.sign_preserving_primitive());
            loop {
                let n = chain.len();
                let r = chain[n - 2].positive_pseudo_rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push(r.neg().sign_preserving_primitive());
            }
        }
        Self { chain }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn sign_variations(&self, x: &Rational) -> usize {
        let mut last = Ordering::Equal;
        let mut v = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_variations(a) - self.sign_variations(b)
    }
}

/// Split point strictly inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &IntPoly, lo: &Rational, hi: &Rational) -> Rational {
    let w = hi - lo;
    for den in 2i64.. {
        for num in 1..den {
            let x = lo + &w * Rational::new(num.into(), den.into());
            if p.sign_at(&x) != Ordering::Equal {
                return x;
            }
        }
    }
    unreachable!()
}

/// Isolates every distinct real root of `p` in the open interval `(lo, hi)`.
///
/// Works on the square-free part of `p`; returned intervals are disjoint, sorted,
/// lie inside `(lo, hi)`, and each contains exactly one root of that square-free part.
pub fn sturm_isolate_roots(
    p: &IntPoly,
    lo: &Rational,
    hi: &Rational,
) -> Result<Vec<IsolatingInterval>, ExactAlgError> {
    if p.is_zero() {
        return Err(ExactAlgError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(ExactAlgError::EmptyRange);
    }
    let sf = p.square_free().deflate_at(lo).deflate_at(hi);
    Ok(isolate_square_free(&sf, lo, hi))
}

/// Same as [`sturm_isolate_roots`] for an already square-free `p` with no root at `lo` or `hi`.
pub fn isolate_square_free(p: &IntPoly, lo: &Rational, hi: &Rational) -> Vec<IsolatingInterval> {
    if p.is_constant() {
        return vec![];
    }
    let chain = SturmChain::new(p);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_roots(lo, hi))];
    while let Some((a, b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => out.push(IsolatingInterval { lo: a, hi: b }),
            _ => {
                let m = split_point(p, &a, &b);
                let left = chain.count_roots(&a, &m);
                stack.push((m.clone(), b, n - left));
                stack.push((a, m, left));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Whether the root of `p` isolated by `a` equals the root of `q` isolated by `b`.
pub fn same_root(p: &IntPoly, a: &IsolatingInterval, q: &IntPoly, b: &IsolatingInterval) -> bool {
    let lo = (&a.lo).max(&b.lo).clone();
    let hi = (&a.hi).min(&b.hi).clone();
    if lo >= hi {
        return false;
    }
    let g = p.gcd(q);
    if g.is_constant() {
        return false;
    }
    SturmChain::new(&g.square_free()).count_roots(&lo, &hi) > 0
}
