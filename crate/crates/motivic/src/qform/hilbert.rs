//! The Hilbert symbol `(a, b)_v` over the completions of `Q`.
//!
//! Computed by the classical case analysis: a sign test at the real
//! place, valuations and Legendre symbols at odd primes, and the
//! unit-square-class formulas at 2.

use crate::brauer::Place;
use crate::numtheory::{legendre, unit_part, valuation};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `+1` iff `z^2 = a x^2 + b y^2` has a nonzero solution over the
/// completion of `Q` at `v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> i32 {
    assert!(!a.is_zero() && !b.is_zero(), "Hilbert symbol needs nonzero arguments");
    match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Finite(2) => hilbert_at_two(a, b),
        Place::Finite(p) => hilbert_at_odd(a, b, p),
    }
}

fn hilbert_at_odd(a: &BigRational, b: &BigRational, p: u64) -> i32 {
    let p_big = BigUint::from(p);
    let alpha = valuation(a, &p_big);
    let beta = valuation(b, &p_big);
    let u = unit_part(a, &p_big);
    let w = unit_part(b, &p_big);
    // (a,b)_p = (-1)^{alpha beta (p-1)/2} (u|p)^beta (w|p)^alpha.
    let mut sign = 1i32;
    if alpha % 2 != 0 && beta % 2 != 0 && (p - 1) / 2 % 2 == 1 {
        sign = -sign;
    }
    if beta % 2 != 0 && legendre_rational(&u, &p_big) == -1 {
        sign = -sign;
    }
    if alpha % 2 != 0 && legendre_rational(&w, &p_big) == -1 {
        sign = -sign;
    }
    sign
}

fn hilbert_at_two(a: &BigRational, b: &BigRational) -> i32 {
    let two = BigUint::from(2u32);
    let alpha = valuation(a, &two);
    let beta = valuation(b, &two);
    let u = unit_part(a, &two);
    let w = unit_part(b, &two);
    // (a,b)_2 = (-1)^{eps(u) eps(w) + alpha omega(w) + beta omega(u)}.
    let mut exponent = eps(&u) * eps(&w);
    exponent += alpha.rem_euclid(2) * omega(&w);
    exponent += beta.rem_euclid(2) * omega(&u);
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a `p`-adic unit written as a rational.
fn legendre_rational(u: &BigRational, p: &BigUint) -> i32 {
    let prod: BigInt = u.numer() * u.denom();
    legendre(&prod, p)
}

/// `u mod 8` for an odd rational `r/s`; since `s^{-1} = s (mod 8)` for
/// odd `s`, this is `r s mod 8`.
fn odd_unit_mod8(u: &BigRational) -> u8 {
    use num_integer::Integer;
    let prod: BigInt = u.numer() * u.denom();
    let m = prod.mod_floor(&BigInt::from(8));
    let m: u8 = m.to_string().parse().expect("0..7");
    debug_assert!(m % 2 == 1, "2-adic unit expected");
    m
}

/// `(u - 1)/2 mod 2`: zero iff `u = 1 (mod 4)`.
fn eps(u: &BigRational) -> i64 {
    match odd_unit_mod8(u) % 4 {
        1 => 0,
        3 => 1,
        _ => unreachable!("odd unit"),
    }
}

/// `(u^2 - 1)/8 mod 2`: zero iff `u = +-1 (mod 8)`.
fn omega(u: &BigRational) -> i64 {
    match odd_unit_mod8(u) {
        1 | 7 => 0,
        3 | 5 => 1,
        _ => unreachable!("odd unit"),
    }
}

/// Whether `x` is a square in the completion of `Q` at `v`.
pub fn is_local_square(x: &BigRational, v: Place) -> bool {
    assert!(!x.is_zero());
    match v {
        Place::Real => x.is_positive(),
        Place::Finite(2) => {
            let two = BigUint::from(2u32);
            valuation(x, &two) % 2 == 0 && odd_unit_mod8(&unit_part(x, &two)) == 1
        }
        Place::Finite(p) => {
            let p_big = BigUint::from(p);
            valuation(x, &p_big) % 2 == 0
                && legendre_rational(&unit_part(x, &p_big), &p_big) == 1
        }
    }
}
