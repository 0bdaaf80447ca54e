//! Rational scalars.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; both invariants are maintained by the backing
//! implementation. The helpers here cover the small integer constructors used
//! everywhere and the `p/q` text form used by every serialization surface
//! (integers print without the `/1`).

use alloc::string::String;
use alloc::string::ToString;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `p/q` in lowest terms. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Canonical text form: `p` when the denominator is one, else `p/q` with `q > 0`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = String::new();
        let _ = write!(s, "{}/{}", r.numer(), r.denom());
        s
    }
}

/// Parses `p` or `p/q` with optional sign on `p`. Whitespace is not consumed.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let p: BigInt = num.parse().map_err(|_| RatParseError {
        input: s.to_string(),
    })?;
    let q: BigInt = match den {
        Some(d) => d.parse().map_err(|_| RatParseError {
            input: s.to_string(),
        })?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(RatParseError {
            input: s.to_string(),
        });
    }
    Ok(Rat::new(p, q))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatParseError {
    pub input: String,
}

impl core::fmt::Display for RatParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "not a rational number: {:?}", self.input)
    }
}

/// Falling factorial `v (v-1) ... (v-k+1)` as an exact integer; `k = 0` gives 1.
pub fn falling_factorial(v: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(v - j as i64);
    }
    acc
}

/// Binomial coefficient for small arguments, exact.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    acc
}

/// Sign-normalized absolute comparison helper for display ordering.
pub fn is_negative(r: &Rat) -> bool {
    r.is_negative()
}
