//! Exact scalars and the factorial/binomial primitives.
//!
//! `Integer` and `Rational` are the `num` crate's unbounded types. A
//! `BigRational` is reduced on construction with a positive denominator, so
//! equality is structural.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// `m!` as an unbounded integer; `0! = 1`.
pub fn factorial(m: u64) -> Integer {
    (2..=m).fold(Integer::one(), |acc, j| acc * j)
}

/// Like [`factorial`], but takes a signed argument and rejects negatives.
pub fn factorial_checked(m: i64) -> Result<Integer> {
    u64::try_from(m)
        .map(factorial)
        .map_err(|_| Error::NegativeFactorial(m))
}

/// Binomial coefficient with an arbitrary integer upper argument:
/// `r (r-1) ... (r-j+1) / j!` for `j >= 0` and `0` for `j < 0`.
pub fn binomial_general(r: &Integer, j: i64) -> Integer {
    if j < 0 {
        return Integer::zero();
    }
    // acc holds r(r-1)...(r-i+1)/i! after step i, which is always integral
    let mut acc = Integer::one();
    for i in 0..j {
        acc = acc * (r - i) / (i + 1);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// [`binomial_general`] for machine-sized upper arguments.
pub fn binomial(r: i64, j: i64) -> Integer {
    binomial_general(&Integer::from(r), j)
}

/// Rising factorial `x (x+1) ... (x+n-1)`; empty product for `n = 0`.
pub fn rising(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

/// Falling factorial `x (x-1) ... (x-n+1)`; empty product for `n = 0`.
pub fn falling(x: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        acc *= &factor;
        factor -= Rational::one();
    }
    acc
}

/// `1/m!` for `m >= 0` and `0` for negative `m`, the convention that lets
/// sums over `1/(l-1)!` start at `l = 0`.
pub fn reciprocal_factorial_weight(m: i64) -> Rational {
    match u64::try_from(m) {
        Ok(m) => Rational::new(Integer::one(), factorial(m)),
        Err(_) => Rational::zero(),
    }
}

/// `(-1)^e` as an integer.
pub(crate) fn sign(e: i64) -> Integer {
    if e.rem_euclid(2) == 0 {
        Integer::one()
    } else {
        -Integer::one()
    }
}

pub(crate) fn int(x: i64) -> Rational {
    Rational::from_integer(Integer::from(x))
}

/// Converts a rational known to be integral; `None` when it is not.
pub(crate) fn to_integer(x: &Rational) -> Option<Integer> {
    x.is_integer().then(|| x.to_integer())
}
