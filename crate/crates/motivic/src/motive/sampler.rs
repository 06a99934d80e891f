//! Seeded random generation of orbit morphisms, used by the randomized
//! law and reconstruction suites.
//!
//! Isomorphisms are built as products of a signed permutation with unit
//! diagonal scalars and unipotent triangular matrices, so exact
//! invertibility over the tag ring holds by construction for any tag.

use super::orbit::OrbitMorphism;
use crate::arith::{RingTag, ScalarMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeMap;

/// A hidden object together with a random orbit isomorphism onto a sum
/// of units and its exact inverse.
#[derive(Debug, Clone)]
pub struct ReconstructionInstance {
    pub hidden_twists: Vec<i64>,
    pub f: OrbitMorphism,
    pub g: OrbitMorphism,
}

/// A random unit of the tag ring: a sign times a bounded product of
/// inverted primes.
pub fn random_unit(rng: &mut impl Rng, tag: &RingTag) -> BigRational {
    let mut unit = BigRational::one();
    if let RingTag::Localized { primes, .. } = tag {
        for p in primes.iter().take(3) {
            let e: i32 = rng.gen_range(-1..=1);
            let p_rat = BigRational::from(BigInt::from(p.clone()));
            match e {
                1 => unit *= p_rat,
                -1 => unit /= p_rat,
                _ => {}
            }
        }
    }
    if rng.gen_bool(0.5) {
        unit = -unit;
    }
    unit
}

/// A random ring element of small height: an integer, possibly divided
/// by an inverted prime.
pub fn random_element(rng: &mut impl Rng, tag: &RingTag) -> BigRational {
    let n: i64 = rng.gen_range(-4..=4);
    let mut x = BigRational::from(BigInt::from(n));
    if let RingTag::Localized { primes, .. } = tag {
        if !primes.is_empty() && rng.gen_bool(0.3) {
            let idx = rng.gen_range(0..primes.len());
            let p = primes.iter().nth(idx).expect("index in range");
            x /= BigRational::from(BigInt::from(p.clone()));
        }
    }
    x
}

/// A random invertible matrix over the tag ring: signed-permutation
/// times diagonal units times unipotent lower and upper factors. The
/// determinant is a unit for every tag.
pub fn random_unit_matrix(rng: &mut impl Rng, n: usize, tag: &RingTag) -> ScalarMatrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut entries = vec![BigRational::zero(); n * n];
    for (r, &c) in perm.iter().enumerate() {
        entries[r * n + c] = random_unit(rng, tag);
    }
    let p = ScalarMatrix::new(n, n, entries, tag.clone()).expect("units lie in the ring");
    let mut lower = ScalarMatrix::identity(n, tag.clone());
    let mut upper = ScalarMatrix::identity(n, tag.clone());
    for r in 0..n {
        for c in 0..n {
            if r > c && rng.gen_bool(0.5) {
                lower.set(r, c, random_element(rng, tag)).expect("in ring");
            }
            if r < c && rng.gen_bool(0.5) {
                upper.set(r, c, random_element(rng, tag)).expect("in ring");
            }
        }
    }
    p.mul(&lower)
        .and_then(|m| m.mul(&upper))
        .expect("shapes agree")
}

/// Packs a flattened matrix into an orbit morphism between the given
/// twist lists: entry `(r, s)` lands in the component at
/// `target[r] - source[s]`.
pub fn morphism_from_flat(
    flat: &ScalarMatrix,
    source: &[i64],
    target: &[i64],
    tag: &RingTag,
) -> OrbitMorphism {
    let mut components: BTreeMap<i64, ScalarMatrix> = BTreeMap::new();
    for r in 0..target.len() {
        for s in 0..source.len() {
            let v = flat.at(r, s);
            if v.is_zero() {
                continue;
            }
            let j = target[r] - source[s];
            let entry = components
                .entry(j)
                .or_insert_with(|| ScalarMatrix::zero(target.len(), source.len(), tag.clone()));
            entry.set(r, s, v.clone()).expect("entry lies in the ring");
        }
    }
    OrbitMorphism::new(source.to_vec(), target.to_vec(), tag.clone(), components)
        .expect("slot-wise packing respects the twist constraint")
}

/// A random orbit morphism with entries on a random subset of the
/// admissible slots.
pub fn random_morphism(
    rng: &mut impl Rng,
    source: &[i64],
    target: &[i64],
    tag: &RingTag,
) -> OrbitMorphism {
    let rows = target.len();
    let cols = source.len();
    let mut entries = vec![BigRational::zero(); rows * cols];
    for (i, e) in entries.iter_mut().enumerate() {
        let _ = i;
        if rng.gen_bool(0.6) {
            *e = random_element(rng, tag);
        }
    }
    let flat = ScalarMatrix::new(rows, cols, entries, tag.clone()).expect("ring elements");
    morphism_from_flat(&flat, source, target, tag)
}

/// A random reconstruction instance: hidden twists drawn from `{0..d}`,
/// an isomorphism onto `1^m` with unit determinant over `Z[1/(2d)!]`,
/// and its exact inverse.
pub fn random_reconstruction_instance(
    rng: &mut impl Rng,
    m: usize,
    d: u64,
    tag: &RingTag,
) -> ReconstructionInstance {
    assert!(m >= 1);
    let hidden_twists: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=d as i64)).collect();
    let flat = random_unit_matrix(rng, m, tag);
    let f = morphism_from_flat(&flat, &hidden_twists, &vec![0; m], tag);
    let g = super::orbit::orbit_is_isomorphism(&f)
        .expect("unit-determinant flat matrices are orbit isomorphisms");
    ReconstructionInstance {
        hidden_twists,
        f,
        g,
    }
}

/// The coefficient tag `Z[1/(2d)!]` used by the reconstruction suite.
pub fn reconstruction_tag(d: u64) -> RingTag {
    RingTag::for_dimension(d)
}

/// A random list of twists for the law suites.
pub fn random_twist_list(rng: &mut impl Rng, max_len: usize, twist_bound: i64) -> Vec<i64> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| rng.gen_range(-twist_bound..=twist_bound))
        .collect()
}
