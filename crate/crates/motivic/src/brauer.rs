//! Brauer classes of `Q` described by their local invariants.
//!
//! A class is a finite map from places of `Q` to `Q/Z`, with invariant
//! sum zero and the real invariant confined to `{0, 1/2}`. Tensor
//! product is place-wise addition, so triviality and order are exact
//! arithmetic.

use crate::numtheory;
use crate::qform::hilbert_symbol;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BrauerError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("local invariants sum to {0}, not an integer")]
    InvariantSumNonzero(BigRational),
    #[error("real invariant must be 0 or 1/2, got {0}")]
    BadRealInvariant(BigRational),
}

/// A place of `Q`: the real place or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Real,
    Finite(u64),
}

impl Place {
    /// A finite place; the prime is verified.
    pub fn finite(p: u64) -> Result<Self, BrauerError> {
        if numtheory::is_prime_u64(p) {
            Ok(Place::Finite(p))
        } else {
            Err(BrauerError::NotPrime(p))
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// An element of the Brauer group of `Q`, as local invariants in `Q/Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BrauerClass {
    invariants: BTreeMap<Place, BigRational>,
}

fn reduce_mod_one(x: &BigRational) -> BigRational {
    let f = x.floor();
    x - f
}

impl BrauerClass {
    /// The trivial class.
    pub fn trivial() -> Self {
        BrauerClass::default()
    }

    /// Builds a class from an invariant table. Invariants are reduced
    /// modulo 1; the sum-zero and real-place constraints are enforced.
    pub fn from_invariants(
        table: impl IntoIterator<Item = (Place, BigRational)>,
    ) -> Result<Self, BrauerError> {
        let mut invariants = BTreeMap::new();
        for (place, inv) in table {
            let inv = reduce_mod_one(&inv);
            if inv.is_zero() {
                continue;
            }
            if place.is_real() && inv != BigRational::new(BigInt::one(), BigInt::from(2)) {
                return Err(BrauerError::BadRealInvariant(inv));
            }
            let entry = invariants.entry(place).or_insert_with(BigRational::zero);
            *entry = reduce_mod_one(&(entry.clone() + inv));
        }
        invariants.retain(|_, inv| !inv.is_zero());
        let sum: BigRational = invariants.values().cloned().sum();
        if !reduce_mod_one(&sum).is_zero() {
            return Err(BrauerError::InvariantSumNonzero(sum));
        }
        Ok(BrauerClass { invariants })
    }

    /// The class of the quaternion algebra `(a, b)`: invariant 1/2 at
    /// exactly the places where the Hilbert symbol is -1.
    pub fn from_quaternion(a: &BigRational, b: &BigRational) -> Self {
        assert!(
            !a.is_zero() && !b.is_zero(),
            "quaternion symbols need nonzero slots"
        );
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let table: Vec<(Place, BigRational)> = ramification_candidates(a, b)
            .into_iter()
            .filter(|v| hilbert_symbol(a, b, *v) == -1)
            .map(|v| (v, half.clone()))
            .collect();
        Self::from_invariants(table)
            .expect("the Hilbert product formula forces an even ramification count")
    }

    pub fn invariants(&self) -> impl Iterator<Item = (&Place, &BigRational)> {
        self.invariants.iter()
    }

    pub fn invariant_at(&self, v: &Place) -> BigRational {
        self.invariants
            .get(v)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Place-wise sum of invariants modulo 1.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut invariants = self.invariants.clone();
        for (place, inv) in &other.invariants {
            let entry = invariants.entry(*place).or_insert_with(BigRational::zero);
            *entry = reduce_mod_one(&(entry.clone() + inv));
        }
        invariants.retain(|_, inv| !inv.is_zero());
        BrauerClass { invariants }
    }

    /// `i`-fold tensor power.
    pub fn power(&self, i: u32) -> Self {
        let factor = BigRational::from(BigInt::from(i));
        let mut invariants: BTreeMap<Place, BigRational> = self
            .invariants
            .iter()
            .map(|(place, inv)| (*place, reduce_mod_one(&(inv * &factor))))
            .collect();
        invariants.retain(|_, inv| !inv.is_zero());
        BrauerClass { invariants }
    }

    /// Inverse class: negated invariants.
    pub fn inverse(&self) -> Self {
        let invariants = self
            .invariants
            .iter()
            .map(|(place, inv)| (*place, reduce_mod_one(&(-inv.clone()))))
            .collect();
        BrauerClass { invariants }
    }

    /// Order in the Brauer group: the lcm of the invariant denominators.
    pub fn order(&self) -> u64 {
        self.invariants
            .values()
            .map(|inv| {
                inv.denom()
                    .to_string()
                    .parse::<u64>()
                    .expect("desk-scale invariant denominators fit u64")
            })
            .fold(1u64, num_integer::lcm)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    /// Places carrying a nonzero invariant.
    pub fn ramified_places(&self) -> Vec<Place> {
        self.invariants.keys().copied().collect()
    }
}

impl fmt::Display for BrauerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .invariants
            .iter()
            .map(|(place, inv)| format!("{place}: {}", crate::arith::format_rational(inv)))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// The finite set of places where a symbol `(a, b)` can ramify: the real
/// place, 2, and the odd primes dividing either slot.
pub(crate) fn ramification_candidates(a: &BigRational, b: &BigRational) -> Vec<Place> {
    let mut primes = std::collections::BTreeSet::new();
    primes.insert(2u64);
    for x in [a, b] {
        for n in [x.numer(), x.denom()] {
            for p in numtheory::factor(n.magnitude()).into_keys() {
                primes.insert(
                    p.to_string()
                        .parse::<u64>()
                        .expect("desk-scale primes fit u64"),
                );
            }
        }
    }
    let mut places = vec![Place::Real];
    places.extend(primes.into_iter().map(Place::Finite));
    places
}
