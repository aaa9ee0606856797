//! Exact arithmetic over the rationals: univariate polynomials, factorization,
//! rational functions and their partial-fraction decompositions.

mod factor;
mod pfrac;
mod poly;
mod ratfun;

pub use factor::{irreducible_factor, squarefree_decomposition};
pub use pfrac::{partial_fractions, partial_fractions_with, PartialFractionForm, PfTerm};
pub use poly::{poly_gcd, UniPoly};
pub use ratfun::{rf, RatFun};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number; the ground ring of every construction in this crate.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics if `d == 0`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u64, k: u64) -> Rational {
    if k > n {
        return q(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Rational::from_integer(acc)
}

/// Formats a rational the way it appears in expressions: `3`, `-1/2`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
