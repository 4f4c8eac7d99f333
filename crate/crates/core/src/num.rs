//! Exact number types shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational.
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn floor(r: &Rat) -> Int {
    r.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

/// Least nonnegative residue of `a` modulo `m > 0`.
pub fn modulo(a: &Int, m: &Int) -> Int {
    a.mod_floor(m)
}

pub fn lcm(a: &Int, b: &Int) -> Int {
    if a.is_zero() || b.is_zero() {
        return Int::zero();
    }
    a.lcm(b)
}

pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// `true` when `r` is a rational integer.
pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn abs(a: &Int) -> Int {
    a.abs()
}
