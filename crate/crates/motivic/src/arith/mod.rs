//! Exact arithmetic in localized integer rings `Z[1/N]`.
//!
//! A [`RingTag`] names the ring: the inverted integer `N` together with
//! its prime support. A [`LocalizedScalar`] is an exact rational whose
//! denominator is only divisible by primes in that support. The
//! distinguished tag [`RingTag::rationals`] inverts everything, giving
//! all of `Q`.
//!
//! The module also provides the universal Todd denominators
//! `T_m = prod_p p^[m/(p-1)]` and the two invertibility facts the rest
//! of the crate leans on: `m!` is invertible in `Z[1/(2d)!]` for
//! `m <= 2d`, and `T_m` is invertible there for `m <= d`.

mod matrix;

pub use matrix::{idempotent_split, IdempotentSplit, ScalarMatrix};
pub(crate) use matrix::rational_determinant as matrix_determinant;

use crate::numtheory;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("a ring tag must invert a positive integer, got 0")]
    ZeroInverted,
    #[error("denominator {denominator} has prime factor {prime} outside the ring {tag}")]
    DenominatorOutsideTag {
        denominator: BigUint,
        prime: BigUint,
        tag: RingTag,
    },
    #[error("tag mismatch: {0} vs {1}")]
    TagMismatch(RingTag, RingTag),
    #[error("cannot retag from {from} to {to}: support would shrink")]
    RetagUnsupported { from: RingTag, to: RingTag },
    #[error("matrix is not idempotent")]
    NotIdempotent,
    #[error("internal invariant violation: {0}")]
    NonIntegerTrace(String),
    #[error("matrix dimensions do not match: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("division by a non-unit of {0}")]
    NonUnitDivisor(RingTag),
    #[error("cannot parse scalar from {0:?}")]
    ParseScalar(String),
}

/// Names a localization of the integers.
///
/// `Localized` is `Z[1/N]`; `Everything` is the localization at all of
/// `Z \ {0}`, i.e. the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingTag {
    Localized {
        inverted: BigUint,
        primes: BTreeSet<BigUint>,
    },
    Everything,
}

impl RingTag {
    /// Plain integers: `Z[1/1]`.
    pub fn integers() -> Self {
        RingTag::Localized {
            inverted: BigUint::one(),
            primes: BTreeSet::new(),
        }
    }

    /// `Z[1/n]`. Rejects `n = 0`.
    pub fn inverting(n: impl Into<BigUint>) -> Result<Self, ArithError> {
        let n = n.into();
        if n.is_zero() {
            return Err(ArithError::ZeroInverted);
        }
        let primes = numtheory::factor(&n).into_keys().collect();
        Ok(RingTag::Localized {
            inverted: n,
            primes,
        })
    }

    /// `Z[1/k!]`, with the prime support read off directly.
    pub fn inverting_factorial(k: u64) -> Self {
        RingTag::Localized {
            inverted: numtheory::factorial(k),
            primes: numtheory::primes_upto(k).into_iter().map(BigUint::from).collect(),
        }
    }

    /// The coefficient ring of Theorem-scale statements in dimension `d`:
    /// `Z[1/(2d)!]`.
    pub fn for_dimension(d: u64) -> Self {
        Self::inverting_factorial(2 * d)
    }

    /// All of `Q`.
    pub fn rationals() -> Self {
        RingTag::Everything
    }

    pub fn contains_prime(&self, p: &BigUint) -> bool {
        match self {
            RingTag::Localized { primes, .. } => primes.contains(p),
            RingTag::Everything => true,
        }
    }

    /// Checks that every prime factor of `d` is inverted; returns the
    /// offending prime otherwise.
    pub fn supports_denominator(&self, d: &BigUint) -> Result<(), BigUint> {
        match self {
            RingTag::Everything => Ok(()),
            RingTag::Localized { primes, .. } => {
                let mut rest = d.clone();
                for p in primes {
                    while (&rest % p).is_zero() {
                        rest /= p;
                    }
                }
                if rest.is_one() {
                    Ok(())
                } else {
                    // The smallest prime factor of what is left.
                    let fac = numtheory::factor(&rest);
                    Err(fac.into_keys().next().expect("rest > 1 has a prime factor"))
                }
            }
        }
    }

    /// Whether a rational lies in this ring.
    pub fn contains(&self, x: &BigRational) -> bool {
        self.supports_denominator(x.denom().magnitude()).is_ok()
    }

    /// Whether a rational is a unit of this ring: nonzero, and both its
    /// numerator and denominator factor over the inverted primes.
    pub fn is_unit(&self, x: &BigRational) -> bool {
        if x.is_zero() {
            return false;
        }
        self.supports_denominator(x.denom().magnitude()).is_ok()
            && self.supports_denominator(x.numer().magnitude()).is_ok()
    }

    /// Whether every element of `self` lies in `other` (support grows).
    pub fn embeds_in(&self, other: &RingTag) -> bool {
        match (self, other) {
            (_, RingTag::Everything) => true,
            (RingTag::Everything, _) => false,
            (RingTag::Localized { primes: a, .. }, RingTag::Localized { primes: b, .. }) => {
                a.is_subset(b)
            }
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Everything => write!(f, "Q"),
            RingTag::Localized { inverted, .. } if inverted.is_one() => write!(f, "Z"),
            RingTag::Localized { inverted, .. } => write!(f, "Z[1/{inverted}]"),
        }
    }
}

/// An exact rational constrained to a localized ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalizedScalar {
    value: BigRational,
    tag: RingTag,
}

impl LocalizedScalar {
    pub fn new(value: BigRational, tag: RingTag) -> Result<Self, ArithError> {
        match tag.supports_denominator(value.denom().magnitude()) {
            Ok(()) => Ok(LocalizedScalar { value, tag }),
            Err(prime) => Err(ArithError::DenominatorOutsideTag {
                denominator: value.denom().magnitude().clone(),
                prime,
                tag,
            }),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>, tag: RingTag) -> Self {
        LocalizedScalar {
            value: BigRational::from(n.into()),
            tag,
        }
    }

    pub fn zero(tag: RingTag) -> Self {
        Self::from_integer(0, tag)
    }

    pub fn one(tag: RingTag) -> Self {
        Self::from_integer(1, tag)
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn tag(&self) -> &RingTag {
        &self.tag
    }

    pub fn numerator(&self) -> &BigInt {
        self.value.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.value.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_tags(&self, other: &Self) -> Result<(), ArithError> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(ArithError::TagMismatch(self.tag.clone(), other.tag.clone()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_tags(other)?;
        Ok(LocalizedScalar {
            value: &self.value + &other.value,
            tag: self.tag.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_tags(other)?;
        Ok(LocalizedScalar {
            value: &self.value - &other.value,
            tag: self.tag.clone(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_tags(other)?;
        Ok(LocalizedScalar {
            value: &self.value * &other.value,
            tag: self.tag.clone(),
        })
    }

    pub fn neg(&self) -> Self {
        LocalizedScalar {
            value: -self.value.clone(),
            tag: self.tag.clone(),
        }
    }

    /// Multiplicative inverse, when this scalar is a unit of its ring.
    pub fn inverse(&self) -> Option<Self> {
        scalar_is_invertible(self).then(|| LocalizedScalar {
            value: self.value.recip(),
            tag: self.tag.clone(),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_tags(other)?;
        let inv = other
            .inverse()
            .ok_or_else(|| ArithError::NonUnitDivisor(self.tag.clone()))?;
        self.mul(&inv)
    }

    /// Embeds this scalar into a larger localization.
    pub fn retag(&self, to: RingTag) -> Result<Self, ArithError> {
        if self.tag.embeds_in(&to) {
            Ok(LocalizedScalar {
                value: self.value.clone(),
                tag: to,
            })
        } else {
            Err(ArithError::RetagUnsupported {
                from: self.tag.clone(),
                to,
            })
        }
    }
}

impl fmt::Display for LocalizedScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.value))
    }
}

/// Renders a rational as `p/q`, omitting `/q` when `q = 1`.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p` or `p/q` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let s = s.trim();
    let mk_err = || ArithError::ParseScalar(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| mk_err())?;
            Ok(BigRational::from(n))
        }
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|_| mk_err())?;
            let d = BigInt::from_str(den.trim()).map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(mk_err());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// True iff the scalar is a unit of its ring: nonzero with every prime
/// factor of the numerator inverted.
pub fn scalar_is_invertible(x: &LocalizedScalar) -> bool {
    x.tag().is_unit(x.value())
}

/// The universal Todd denominator `T_m = prod_p p^[m/(p-1)]`; only the
/// primes with `p - 1 <= m` contribute.
pub fn todd_denominator(m: u64) -> BigUint {
    let mut acc = BigUint::one();
    for p in numtheory::primes_upto(m + 1) {
        let exp = (m / (p - 1)) as u32;
        acc *= BigUint::from(p).pow(exp);
    }
    acc
}

/// Which of the two invertibility claims to verify.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithClaim {
    /// `m!` invertible in `Z[1/(2d)!]` (holds whenever `m <= 2d`).
    Factorial,
    /// `T_m` invertible in `Z[1/(2d)!]` (holds whenever `m <= d`).
    Todd,
}

/// Verifies invertibility of `m!` or `T_m` in `Z[1/(2d)!]` by direct
/// scalar computation, and returns the verified truth value.
pub fn lemma_arith_check(m: u64, d: u64, which: ArithClaim) -> bool {
    let tag = RingTag::for_dimension(d);
    let n = match which {
        ArithClaim::Factorial => numtheory::factorial(m),
        ArithClaim::Todd => todd_denominator(m),
    };
    let scalar = LocalizedScalar::from_integer(BigInt::from(n), tag);
    scalar_is_invertible(&scalar)
}
