//! Universal Chern-character and Todd polynomials in formal Chern
//! classes, truncated at an explicit working degree.
//!
//! The engine works in the power-sum basis: `chern_numerator(m)` is the
//! m-th power sum of the Chern roots rewritten in the classes `c_i` via
//! the Newton recurrence, and the Todd polynomials come from
//! exponentiating `log(x / (1 - e^{-x}))` summed over the roots. That
//! one engine yields both families and keeps every coefficient exact.
//!
//! Every polynomial carries its truncation degree; mixing truncations is
//! an error, never a silent coercion.

mod series;

pub(crate) use series::todd_character_series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("truncation degrees differ: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("assignment for c_{0} is missing")]
    MissingAssignment(u32),
    #[error("polynomial has no constant term; it is not invertible")]
    NotInvertible,
}

/// A monomial in the formal Chern classes: `c_1^{e_1} c_2^{e_2} ...`,
/// stored as index -> multiplicity with zero multiplicities omitted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClassMonomial {
    exponents: BTreeMap<u32, u32>,
}

impl ClassMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// The single class `c_i`, `i >= 1`.
    pub fn chern(i: u32) -> Self {
        assert!(i >= 1, "Chern class indices start at 1");
        let mut exponents = BTreeMap::new();
        exponents.insert(i, 1);
        ClassMonomial { exponents }
    }

    pub fn from_exponents(exponents: BTreeMap<u32, u32>) -> Self {
        let exponents = exponents.into_iter().filter(|&(i, m)| {
            assert!(i >= 1, "Chern class indices start at 1");
            m > 0
        });
        ClassMonomial {
            exponents: exponents.collect(),
        }
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.exponents
    }

    /// Total weight `sum i * e_i`; `c_i` sits in weight `i`.
    pub fn weight(&self) -> u32 {
        self.exponents.iter().map(|(i, m)| i * m).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    fn times(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (&i, &m) in &other.exponents {
            *exponents.entry(i).or_insert(0) += m;
        }
        ClassMonomial { exponents }
    }
}

impl fmt::Display for ClassMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(i, m)| {
                if *m == 1 {
                    format!("c{i}")
                } else {
                    format!("c{i}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A graded polynomial in formal Chern classes with exact rational
/// coefficients, truncated at `truncation` (terms of higher weight are
/// discarded by every operation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClassPolynomial {
    truncation: u32,
    terms: BTreeMap<ClassMonomial, BigRational>,
}

impl GradedClassPolynomial {
    pub fn zero(truncation: u32) -> Self {
        GradedClassPolynomial {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(truncation: u32) -> Self {
        Self::constant(BigRational::one(), truncation)
    }

    pub fn constant(c: BigRational, truncation: u32) -> Self {
        let mut p = Self::zero(truncation);
        p.add_term(ClassMonomial::one(), c);
        p
    }

    /// The class `c_i` as a polynomial (zero if `i` exceeds the
    /// truncation degree).
    pub fn chern_class(i: u32, truncation: u32) -> Self {
        let mut p = Self::zero(truncation);
        p.add_term(ClassMonomial::chern(i), BigRational::one());
        p
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &ClassMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&ClassMonomial::one())
    }

    fn add_term(&mut self, m: ClassMonomial, c: BigRational) {
        if c.is_zero() || m.weight() > self.truncation {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_truncation(&self, other: &Self) -> Result<(), ClassError> {
        if self.truncation == other.truncation {
            Ok(())
        } else {
            Err(ClassError::TruncationMismatch(
                self.truncation,
                other.truncation,
            ))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ClassError> {
        self.check_truncation(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ClassError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        GradedClassPolynomial {
            truncation: self.truncation,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Self::zero(self.truncation);
        }
        GradedClassPolynomial {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ClassError> {
        self.check_truncation(other)?;
        let mut out = Self::zero(self.truncation);
        for (ma, ca) in &self.terms {
            let wa = ma.weight();
            for (mb, cb) in &other.terms {
                if wa + mb.weight() > self.truncation {
                    continue;
                }
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Self, ClassError> {
        let mut acc = Self::one(self.truncation);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The homogeneous weight-`w` part.
    pub fn homogeneous_part(&self, w: u32) -> Self {
        GradedClassPolynomial {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() == w)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-truncates, dropping any term above the new degree.
    pub fn with_truncation(&self, truncation: u32) -> Self {
        GradedClassPolynomial {
            truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weight() <= truncation)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Least common denominator of all coefficients (1 for the zero
    /// polynomial).
    pub fn lcm_denominator(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// True when every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Substitutes a value for each class `c_i`; the assignment must
    /// cover every index appearing in the polynomial and all values must
    /// share one truncation degree.
    pub fn evaluate(
        &self,
        assignment: &dyn Fn(u32) -> Option<GradedClassPolynomial>,
        truncation: u32,
    ) -> Result<GradedClassPolynomial, ClassError> {
        let mut out = GradedClassPolynomial::zero(truncation);
        for (m, c) in &self.terms {
            let mut term = GradedClassPolynomial::constant(c.clone(), truncation);
            for (&i, &e) in m.exponents() {
                let value = assignment(i).ok_or(ClassError::MissingAssignment(i))?;
                if value.truncation() != truncation {
                    return Err(ClassError::TruncationMismatch(value.truncation(), truncation));
                }
                term = term.mul(&value.pow(e)?)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Multiplicative inverse within the truncation, when the constant
    /// term is nonzero: computed by the geometric series.
    pub fn inverse(&self) -> Result<Self, ClassError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(ClassError::NotInvertible);
        }
        let c0_inv = c0.recip();
        // self = c0 (1 - u) with u of positive weight.
        let u = Self::constant(c0.clone(), self.truncation)
            .sub(self)?
            .scale(&c0_inv);
        let mut acc = Self::one(self.truncation);
        let mut power = Self::one(self.truncation);
        for _ in 0..self.truncation {
            power = power.mul(&u)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(&c0_inv))
    }
}

impl fmt::Display for GradedClassPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Weight first, then exponent vectors in descending lexicographic
        // order, so c1^3 prints before c1*c2 before c3.
        let mut ordered: Vec<(&ClassMonomial, &BigRational)> = self.terms.iter().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            a.weight()
                .cmp(&b.weight())
                .then_with(|| exponent_vector(b).cmp(&exponent_vector(a)))
        });
        for (idx, (m, coeff)) in ordered.into_iter().enumerate() {
            let neg = coeff.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            if m.is_one() {
                write!(f, "{}", crate::arith::format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", crate::arith::format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

fn exponent_vector(m: &ClassMonomial) -> Vec<u32> {
    let max = m.exponents().keys().max().copied().unwrap_or(0);
    (1..=max)
        .map(|i| m.exponents().get(&i).copied().unwrap_or(0))
        .collect()
}

/// `poly_multiply(a, b)`: the truncated product; provided as a free
/// function alongside the method form.
pub fn poly_multiply(
    a: &GradedClassPolynomial,
    b: &GradedClassPolynomial,
) -> Result<GradedClassPolynomial, ClassError> {
    a.mul(b)
}

/// The m-th power sum of the Chern roots written in the classes `c_i`
/// (Newton recurrence); homogeneous of weight `m` with integer
/// coefficients.
pub fn chern_numerator(m: u32) -> GradedClassPolynomial {
    assert!(m >= 1, "power sums start at m = 1");
    power_sums_upto(m, m).pop().expect("m >= 1 entries")
}

/// Power sums `S_1 .. S_m` at truncation `truncation`.
fn power_sums_upto(m: u32, truncation: u32) -> Vec<GradedClassPolynomial> {
    let mut sums: Vec<GradedClassPolynomial> = Vec::with_capacity(m as usize);
    for k in 1..=m {
        // S_k = c_1 S_{k-1} - c_2 S_{k-2} + ... + (-1)^k (k) c_k... signs:
        // S_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i S_{k-i} + (-1)^{k-1} k c_k.
        let mut acc = GradedClassPolynomial::zero(truncation);
        for i in 1..k {
            let ci = GradedClassPolynomial::chern_class(i, truncation);
            let prev = &sums[(k - i - 1) as usize];
            let sign = if (i - 1) % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            acc = acc
                .add(&ci.mul(prev).expect("same truncation").scale(&sign))
                .expect("same truncation");
        }
        let sign = if (k - 1) % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        let lead = GradedClassPolynomial::chern_class(k, truncation)
            .scale(&(sign * BigRational::from(BigInt::from(k))));
        acc = acc.add(&lead).expect("same truncation");
        sums.push(acc);
    }
    sums
}

/// The weight-`m` Todd polynomial: the degree-`m` part of
/// `prod_i x_i / (1 - e^{-x_i})` rewritten in the classes. Its least
/// common denominator divides `T_m`.
pub fn todd_polynomial(m: u32) -> GradedClassPolynomial {
    todd_total(m).homogeneous_part(m)
}

/// The full Todd class `sum_{k <= truncation} Td_k` at one truncation.
pub fn todd_total(truncation: u32) -> GradedClassPolynomial {
    if truncation == 0 {
        return GradedClassPolynomial::one(0);
    }
    // log(x/(1-e^{-x})) as a univariate series; summing it over the roots
    // turns each x^k into the k-th power sum.
    let log_q = series::todd_character_series(truncation).log();
    let sums = power_sums_upto(truncation, truncation);
    let mut exponent = GradedClassPolynomial::zero(truncation);
    for k in 1..=truncation {
        let coeff = log_q.coefficient(k as usize);
        if coeff.is_zero() {
            continue;
        }
        exponent = exponent
            .add(&sums[(k - 1) as usize].scale(&coeff))
            .expect("same truncation");
    }
    exp_of_positive(&exponent)
}

/// `exp` of a polynomial with zero constant term, exact within the
/// truncation.
fn exp_of_positive(g: &GradedClassPolynomial) -> GradedClassPolynomial {
    assert!(
        g.constant_term().is_zero(),
        "exponent must have zero constant term"
    );
    let mut acc = GradedClassPolynomial::one(g.truncation());
    let mut power = GradedClassPolynomial::one(g.truncation());
    let mut fact = BigRational::one();
    for j in 1..=g.truncation() {
        power = power.mul(g).expect("same truncation");
        if power.is_zero() {
            break;
        }
        fact *= BigRational::from(BigInt::from(j));
        acc = acc.add(&power.scale(&fact.recip())).expect("same truncation");
    }
    acc
}

/// The Chern character of a class of rank `rank` whose Chern classes are
/// given by `assignment`: `rank + sum_{m=1}^{D} S_m / m!` evaluated and
/// truncated at `D = truncation`.
pub fn ch_of(
    rank: &BigRational,
    assignment: &dyn Fn(u32) -> Option<GradedClassPolynomial>,
    truncation: u32,
) -> Result<GradedClassPolynomial, ClassError> {
    let mut out = GradedClassPolynomial::constant(rank.clone(), truncation);
    let mut fact = BigRational::one();
    for m in 1..=truncation {
        fact *= BigRational::from(BigInt::from(m));
        let numerator = chern_numerator(m).evaluate(assignment, truncation)?;
        out = out.add(&numerator.scale(&fact.recip()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn c(i: u32, d: u32) -> GradedClassPolynomial {
        GradedClassPolynomial::chern_class(i, d)
    }

    #[test]
    fn newton_first_cases() {
        assert_eq!(chern_numerator(1), c(1, 1));
        // S_2 = c1^2 - 2 c2
        let expected = c(1, 2)
            .mul(&c(1, 2))
            .unwrap()
            .sub(&c(2, 2).scale(&rat(2, 1)))
            .unwrap();
        assert_eq!(chern_numerator(2), expected);
        // S_3 = c1^3 - 3 c1 c2 + 3 c3
        let c1 = c(1, 3);
        let expected = c1
            .pow(3)
            .unwrap()
            .sub(&c1.mul(&c(2, 3)).unwrap().scale(&rat(3, 1)))
            .unwrap()
            .add(&c(3, 3).scale(&rat(3, 1)))
            .unwrap();
        assert_eq!(chern_numerator(3), expected);
    }

    #[test]
    fn chern_numerators_are_integral() {
        for m in 1..=12 {
            assert!(
                chern_numerator(m).has_integer_coefficients(),
                "S_{m} has a non-integer coefficient"
            );
        }
    }

    #[test]
    fn todd_low_degrees() {
        assert_eq!(todd_polynomial(0), GradedClassPolynomial::one(0));
        assert_eq!(todd_polynomial(1), c(1, 1).scale(&rat(1, 2)));
        let expected = c(1, 2)
            .pow(2)
            .unwrap()
            .add(&c(2, 2))
            .unwrap()
            .scale(&rat(1, 12));
        assert_eq!(todd_polynomial(2), expected);
        // Td_3 = c1 c2 / 24
        let expected = c(1, 3).mul(&c(2, 3)).unwrap().scale(&rat(1, 24));
        assert_eq!(todd_polynomial(3), expected);
    }

    #[test]
    fn ch_of_line_bundle() {
        // Line bundle with c1 = h (a formal first class), higher classes 0.
        let assign = |i: u32| -> Option<GradedClassPolynomial> {
            Some(if i == 1 {
                GradedClassPolynomial::chern_class(1, 3)
            } else {
                GradedClassPolynomial::zero(3)
            })
        };
        let ch = ch_of(&rat(1, 1), &assign, 3).unwrap();
        // 1 + h + h^2/2 + h^3/6
        let h = c(1, 3);
        let expected = GradedClassPolynomial::one(3)
            .add(&h)
            .unwrap()
            .add(&h.pow(2).unwrap().scale(&rat(1, 2)))
            .unwrap()
            .add(&h.pow(3).unwrap().scale(&rat(1, 6)))
            .unwrap();
        assert_eq!(ch, expected);
    }

    #[test]
    fn ch_of_trivial_bundle_is_rank() {
        let assign = |_i: u32| Some(GradedClassPolynomial::zero(4));
        let ch = ch_of(&rat(5, 1), &assign, 4).unwrap();
        assert_eq!(ch, GradedClassPolynomial::constant(rat(5, 1), 4));
    }

    #[test]
    fn truncated_products() {
        let one = GradedClassPolynomial::one(1);
        let h = c(1, 1);
        let a = one.add(&h).unwrap();
        let b = one.sub(&h).unwrap();
        // (1+h)(1-h) = 1 - h^2, and h^2 is cut at truncation 1.
        assert_eq!(poly_multiply(&a, &b).unwrap(), one);
        let other = GradedClassPolynomial::one(2);
        assert!(matches!(
            poly_multiply(&a, &other),
            Err(ClassError::TruncationMismatch(1, 2))
        ));
    }

    #[test]
    fn todd_times_series_reciprocal() {
        let td = todd_total(4);
        let rec = td.inverse().unwrap();
        assert_eq!(td.mul(&rec).unwrap(), GradedClassPolynomial::one(4));
    }

    #[test]
    fn unit_law() {
        let a = c(1, 3).add(&c(2, 3).scale(&rat(7, 3))).unwrap();
        assert_eq!(a.mul(&GradedClassPolynomial::one(3)).unwrap(), a);
    }

    #[test]
    fn denominators_divide_todd_denominator() {
        use crate::arith::todd_denominator;
        use num_bigint::BigUint;
        for m in 0..=12u32 {
            let lcm = todd_polynomial(m).lcm_denominator();
            let tm = todd_denominator(m as u64);
            let lcm_mag: BigUint = lcm.magnitude().clone();
            assert!(
                (&tm % &lcm_mag).is_zero(),
                "lcm denominator of Td_{m} does not divide T_{m}"
            );
            if m <= 8 {
                assert_eq!(lcm_mag, tm, "lcm denominator of Td_{m} should equal T_{m}");
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(chern_numerator(3).to_string(), "c1^3 - 3*c1*c2 + 3*c3");
        assert_eq!(todd_polynomial(2).to_string(), "1/12*c1^2 + 1/12*c2");
    }
}
