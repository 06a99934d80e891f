//! Small exact number-theory helpers shared across the crate.
//!
//! Factorization is plain trial division: every integer this crate
//! factors comes from factorials, form entries, or CLI input of desk
//! scale, where trial division is instantaneous.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Prime factorization of a positive integer by trial division.
pub fn factor(n: &BigUint) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    let mut rest = n.clone();
    let one = BigUint::one();
    if rest <= one {
        return out;
    }
    let two = BigUint::from(2u32);
    while (&rest % &two).is_zero() {
        *out.entry(two.clone()).or_insert(0) += 1;
        rest /= &two;
    }
    let mut p = BigUint::from(3u32);
    while &p * &p <= rest {
        while (&rest % &p).is_zero() {
            *out.entry(p.clone()).or_insert(0) += 1;
            rest /= &p;
        }
        p += 2u32;
    }
    if rest > one {
        *out.entry(rest).or_insert(0) += 1;
    }
    out
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n % p == 0 {
            return n == p;
        }
    }
    // Deterministic Miller-Rabin for u64.
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = modpow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn modpow_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Primes `p <= bound` in increasing order.
pub fn primes_upto(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; (bound + 1) as usize];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= bound as usize {
        if sieve[p] {
            let mut q = p * p;
            while q <= bound as usize {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// Signed squarefree part of a nonzero rational: the unique squarefree
/// integer representing `x` modulo nonzero rational squares.
pub fn squarefree_part(x: &BigRational) -> BigInt {
    assert!(!x.is_zero(), "squarefree part of zero is undefined");
    // x ~ numer * denom modulo squares.
    let prod = x.numer() * x.denom();
    let sign = if prod.is_negative() { -1 } else { 1 };
    let mag = prod.magnitude().clone();
    let mut sf = BigUint::one();
    for (p, e) in factor(&mag) {
        if e % 2 == 1 {
            sf *= p;
        }
    }
    BigInt::from(sf) * sign
}

/// Exact square root of a rational, when it is a perfect square.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().magnitude().sqrt();
    let d = x.denom().magnitude().sqrt();
    let cand = BigRational::new(BigInt::from(n), BigInt::from(d));
    (&cand * &cand == *x).then_some(cand)
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(x: &BigRational, p: &BigUint) -> i64 {
    assert!(!x.is_zero());
    let count = |mut n: BigUint| -> i64 {
        let mut v = 0;
        while (&n % p).is_zero() {
            n /= p;
            v += 1;
        }
        v
    };
    count(x.numer().magnitude().clone()) - count(x.denom().magnitude().clone())
}

/// The unit part of `x` at `p`: `x / p^{v_p(x)}`.
pub fn unit_part(x: &BigRational, p: &BigUint) -> BigRational {
    let v = valuation(x, p);
    let pw = BigRational::from(BigInt::from(p.pow(v.unsigned_abs() as u32)));
    if v >= 0 {
        x / pw
    } else {
        x * pw
    }
}

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}

/// Legendre symbol `(a|p)` for `p` an odd prime and `a` coprime to `p`.
pub fn legendre(a: &BigInt, p: &BigUint) -> i32 {
    let pz = BigInt::from(p.clone());
    let exp = (p - BigUint::one()) / BigUint::from(2u32);
    let r = a.mod_floor(&pz).modpow(&BigInt::from(exp), &pz);
    if r.is_one() {
        1
    } else if r.is_zero() {
        panic!("legendre symbol of a multiple of p");
    } else {
        -1
    }
}
