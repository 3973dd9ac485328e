//! Exact classical knot invariants and the unknotting-type obstructions built on them.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: integer Laurent polynomials (Alexander polynomials).
//! * [`exactalg`]: Gaussian rationals, exact Hermitian inertia, Sturm root isolation.
//! * [`seifert`]: Seifert-matrix invariants and exact signature step functions.
//! * [`knotspec`]: knot expressions, the bundled knot table, evaluation.
//! * [`twobridge`]: continued fractions, lens-space linking forms, the linking-form
//!   obstruction to algebraic unknotting number one.
//! * [`obstruct`]: the bounds ledger and its propagation rules.
//! * [`kirby`]: linking-matrix Kirby calculus and the multi-twist reduction procedures.

pub mod exactalg;
pub mod kirby;
pub mod knotspec;
pub mod obstruct;
pub mod poly;
pub mod seifert;
pub mod twobridge;

/// Arbitrary precision rational used throughout.
pub type Rational = num_rational::BigRational;

pub use num_bigint::BigInt;

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` into a rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(text.parse().ok()?)),
    }
}
