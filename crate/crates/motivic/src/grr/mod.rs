//! Riemann-Roch bookkeeping on products of projective spaces.
//!
//! On `P^{n_1} x ... x P^{n_k}` both K-theory and the Chow ring are free
//! of the same finite rank, with bases indexed by multidegrees
//! `0 <= i_j <= n_j`: line bundles `O(i_1, ..., i_k)` on one side and
//! monomials `h_1^{e_1} ... h_k^{e_k}` (with `h_j^{n_j+1} = 0`) on the
//! other. The Chern character becomes a literal square matrix, the Todd
//! class a concrete polynomial, and the correspondence map
//! `alpha -> ch(alpha) . pr_Y^*(Td(Y))` exact linear algebra.

mod chow;
mod k0;

pub use chow::ChowClass;
pub use k0::{parse_bundle, K0Class};

use crate::arith::{ArithError, RingTag};
use crate::charclasses::todd_character_series;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrrError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("internal invariant violation: Euler characteristic {0} is not an integer")]
    NonIntegerEuler(BigRational),
    #[error("schemes must have at least one factor")]
    EmptyScheme,
    #[error("multidegree {0:?} is out of range for {1}")]
    BadMultidegree(Vec<i64>, ToyScheme),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("class lives on {0}, expected {1}")]
    SchemeMismatch(ToyScheme, ToyScheme),
}

/// A product of projective spaces `P^{n_1} x ... x P^{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ToyScheme {
    factors: Vec<u32>,
}

impl ToyScheme {
    pub fn new(factors: Vec<u32>) -> Result<Self, GrrError> {
        if factors.is_empty() {
            return Err(GrrError::EmptyScheme);
        }
        Ok(ToyScheme { factors })
    }

    /// `P^n`.
    pub fn projective(n: u32) -> Self {
        ToyScheme { factors: vec![n] }
    }

    /// The point `P^0`.
    pub fn point() -> Self {
        Self::projective(0)
    }

    /// The product scheme, concatenating factor lists.
    pub fn product(&self, other: &ToyScheme) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(&other.factors);
        ToyScheme { factors }
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn dimension(&self) -> u64 {
        self.factors.iter().map(|&n| n as u64).sum()
    }

    /// Common rank of K-theory and the Chow group.
    pub fn rank(&self) -> usize {
        self.factors.iter().map(|&n| n as usize + 1).product()
    }

    /// All multidegrees `0 <= i_j <= n_j` in enumeration order (last
    /// factor fastest).
    pub fn multidegrees(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.rank());
        let mut idx = vec![0u32; self.factors.len()];
        loop {
            out.push(idx.clone());
            let mut pos = self.factors.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if idx[pos] < self.factors[pos] {
                    idx[pos] += 1;
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Position of a multidegree in the enumeration.
    pub fn index_of(&self, degree: &[u32]) -> usize {
        debug_assert_eq!(degree.len(), self.factors.len());
        let mut idx = 0usize;
        for (j, &e) in degree.iter().enumerate() {
            debug_assert!(e <= self.factors[j]);
            idx = idx * (self.factors[j] as usize + 1) + e as usize;
        }
        idx
    }
}

impl fmt::Display for ToyScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("P{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for ToyScheme {
    type Err = GrrError;

    /// Parses `"Pn"` or `"PaxPb"` (any number of factors).
    fn from_str(s: &str) -> Result<Self, GrrError> {
        let err = || GrrError::Parse {
            what: "scheme",
            input: s.to_string(),
        };
        let factors = s
            .trim()
            .split('x')
            .map(|part| {
                let part = part.trim();
                let rest = part
                    .strip_prefix('P')
                    .or_else(|| part.strip_prefix('p'))
                    .ok_or_else(err)?;
                rest.parse::<u32>().map_err(|_| err())
            })
            .collect::<Result<Vec<u32>, GrrError>>()?;
        ToyScheme::new(factors)
    }
}

/// The Chern character of a K-class: `sum_i coeff_i prod_j e^{i_j h_j}`
/// truncated by the Chow relations. Every coefficient denominator must
/// be supported by the tag.
pub fn ch_map(x: &K0Class, tag: &RingTag) -> Result<ChowClass, GrrError> {
    let scheme = x.scheme();
    let mut acc = vec![BigRational::zero(); scheme.rank()];
    for (bundle, coeff) in x.iter_nonzero() {
        // prod_j exp(i_j h_j): coefficient at e is prod_j i_j^{e_j}/e_j!.
        for (pos, e) in scheme.multidegrees().iter().enumerate() {
            let mut term = BigRational::from(BigInt::from(coeff.clone()));
            for (j, &ej) in e.iter().enumerate() {
                term *= exp_coefficient(bundle[j] as i64, ej);
            }
            acc[pos] += term;
        }
    }
    ChowClass::new(scheme.clone(), tag.clone(), acc).map_err(GrrError::from)
}

/// `[h^e] exp(i h) = i^e / e!`.
fn exp_coefficient(i: i64, e: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..e {
        num *= BigInt::from(i);
        den *= BigInt::from(t as i64 + 1);
    }
    BigRational::new(num, den)
}

/// The Todd class `prod_j (h_j / (1 - e^{-h_j}))^{n_j + 1}`, verified
/// invertible within the truncation.
pub fn todd_of(scheme: &ToyScheme, tag: &RingTag) -> Result<ChowClass, GrrError> {
    let mut acc = vec![BigRational::zero(); scheme.rank()];
    // Per-factor series q(h)^{n_j+1} truncated at degree n_j.
    let factor_series: Vec<Vec<BigRational>> = scheme
        .factors()
        .iter()
        .map(|&n| {
            let q = todd_character_series(n);
            let q_coeffs: Vec<BigRational> = (0..=n as usize).map(|k| q.coefficient(k)).collect();
            let mut power = vec![BigRational::zero(); n as usize + 1];
            power[0] = BigRational::one();
            for _ in 0..=n {
                power = multiply_truncated(&power, &q_coeffs);
            }
            power
        })
        .collect();
    for (pos, e) in scheme.multidegrees().iter().enumerate() {
        let mut term = BigRational::one();
        for (j, &ej) in e.iter().enumerate() {
            term *= factor_series[j][ej as usize].clone();
        }
        acc[pos] = term;
    }
    let td = ChowClass::new(scheme.clone(), tag.clone(), acc)?;
    // Invertibility check: the reciprocal exists within the truncation;
    // a unit constant term keeps it inside the tag ring.
    let reciprocal = td
        .inverse()
        .expect("Todd classes have constant term 1, a unit of every tag");
    debug_assert_eq!(
        td.mul(&reciprocal).expect("same scheme and tag"),
        ChowClass::one(scheme.clone(), tag.clone())
    );
    Ok(td)
}

fn multiply_truncated(a: &[BigRational], q: &[BigRational]) -> Vec<BigRational> {
    let n = a.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (k, c) in q.iter().enumerate().take(n - i) {
            if !c.is_zero() {
                out[i + k] += ai * c;
            }
        }
    }
    out
}

/// The correspondence map `alpha -> ch(alpha) . pr_Y^*(Td(Y))` for a
/// K-class on the product `X x Y`.
pub fn psi_map(
    alpha: &K0Class,
    x: &ToyScheme,
    y: &ToyScheme,
    tag: &RingTag,
) -> Result<ChowClass, GrrError> {
    let product = x.product(y);
    if alpha.scheme() != &product {
        return Err(GrrError::SchemeMismatch(alpha.scheme().clone(), product));
    }
    let ch = ch_map(alpha, tag)?;
    let td_y = todd_of(y, tag)?;
    let td_pulled = pullback_right(&td_y, x);
    ch.mul(&td_pulled).map_err(GrrError::from)
}

/// Pulls a class on `Y` back along the projection `X x Y -> Y`.
pub fn pullback_right(c: &ChowClass, x: &ToyScheme) -> ChowClass {
    let product = x.product(c.scheme());
    let mut coeffs = vec![BigRational::zero(); product.rank()];
    for (e, v) in c.iter_nonzero() {
        let mut full = vec![0u32; x.factors().len()];
        full.extend(e);
        coeffs[product.index_of(&full)] = v.clone();
    }
    ChowClass::new(product, c.tag().clone(), coeffs)
        .expect("pullback does not change denominators")
}

/// Pulls a class on `X` back along the projection `X x Y -> X`.
pub fn pullback_left(c: &ChowClass, y: &ToyScheme) -> ChowClass {
    let product = c.scheme().product(y);
    let mut coeffs = vec![BigRational::zero(); product.rank()];
    for (e, v) in c.iter_nonzero() {
        let mut full = e.to_vec();
        full.extend(vec![0u32; y.factors().len()]);
        coeffs[product.index_of(&full)] = v.clone();
    }
    ChowClass::new(product, c.tag().clone(), coeffs)
        .expect("pullback does not change denominators")
}

/// Pushes a class forward along the projection that drops the factors in
/// `[from, to)`: integration over the fibre keeps the coefficient of the
/// top power of each dropped factor.
pub fn pushforward_drop(c: &ChowClass, from: usize, to: usize) -> Result<ChowClass, GrrError> {
    let factors = c.scheme().factors();
    assert!(from <= to && to <= factors.len());
    let mut kept_factors: Vec<u32> = factors[..from].to_vec();
    kept_factors.extend(&factors[to..]);
    if kept_factors.is_empty() {
        kept_factors.push(0);
        // Degenerate: pushing everything forward to the point; the kept
        // scheme is P^0.
        let target = ToyScheme::new(kept_factors)?;
        let mut coeffs = vec![BigRational::zero(); 1];
        let mut full: Vec<u32> = factors[from..to].to_vec();
        for (j, n) in full.iter_mut().zip(&factors[from..to]) {
            *j = *n;
        }
        coeffs[0] = c.coefficient(&full);
        return ChowClass::new(target, c.tag().clone(), coeffs).map_err(GrrError::from);
    }
    let target = ToyScheme::new(kept_factors)?;
    let mut coeffs = vec![BigRational::zero(); target.rank()];
    for (pos, e) in target.multidegrees().iter().enumerate() {
        let mut full: Vec<u32> = e[..from].to_vec();
        full.extend(factors[from..to].iter().copied());
        full.extend(&e[from..]);
        coeffs[pos] = c.coefficient(&full);
    }
    ChowClass::new(target, c.tag().clone(), coeffs).map_err(GrrError::from)
}

/// Outcome of the desk-scale Chern-character isomorphism test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChIsoReport {
    pub scheme: ToyScheme,
    pub tag: RingTag,
    pub is_isomorphism: bool,
    /// Exact determinant of the character matrix.
    pub determinant: BigRational,
    /// First matrix entry outside the tag ring, as
    /// `(monomial, bundle, value)`.
    pub offending_entry: Option<(Vec<u32>, Vec<u32>, BigRational)>,
}

impl ChIsoReport {
    /// A scalar witnessing failure: the offending non-integral entry
    /// when one exists, otherwise the determinant.
    pub fn witness(&self) -> BigRational {
        self.offending_entry
            .as_ref()
            .map(|(_, _, v)| v.clone())
            .unwrap_or_else(|| self.determinant.clone())
    }
}

/// Builds the matrix of the Chern character on the line-bundle basis
/// against the monomial basis and tests whether it defines an
/// isomorphism over the tag ring: every entry must lie in the ring and
/// the determinant must be one of its units.
pub fn ch_iso_check(scheme: &ToyScheme, tag: &RingTag) -> ChIsoReport {
    let degrees = scheme.multidegrees();
    let mut rows = Vec::with_capacity(degrees.len());
    let mut offending = None;
    for e in &degrees {
        let mut row = Vec::with_capacity(degrees.len());
        for bundle in &degrees {
            let mut entry = BigRational::one();
            for (j, (&ej, &ij)) in e.iter().zip(bundle).enumerate() {
                let _ = j;
                entry *= exp_coefficient(ij as i64, ej);
            }
            if offending.is_none() && tag.supports_denominator(entry.denom().magnitude()).is_err()
            {
                offending = Some((e.clone(), bundle.clone(), entry.clone()));
            }
            row.push(entry);
        }
        rows.push(row);
    }
    let determinant = crate::arith::matrix_determinant(&rows);
    let is_isomorphism = offending.is_none() && tag.is_unit(&determinant);
    ChIsoReport {
        scheme: scheme.clone(),
        tag: tag.clone(),
        is_isomorphism,
        determinant,
        offending_entry: offending,
    }
}

/// The Euler characteristic of a K-class: the top-degree coefficient of
/// `ch(x) . Td(X)`, computed over `Q` and checked to be an integer.
pub fn euler_characteristic(x: &K0Class) -> Result<BigInt, GrrError> {
    let q = RingTag::rationals();
    let ch = ch_map(x, &q)?;
    let td = todd_of(x.scheme(), &q)?;
    let product = ch.mul(&td)?;
    let top: Vec<u32> = x.scheme().factors().to_vec();
    let chi = product.coefficient(&top);
    if !chi.denom().is_one() {
        return Err(GrrError::NonIntegerEuler(chi));
    }
    Ok(chi.to_integer())
}
