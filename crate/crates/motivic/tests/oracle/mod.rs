//! Independent oracles used by the integration suites: a multivariate
//! polynomial engine over formal Chern roots, a symmetric-function
//! reduction, and a brute-force local solubility test for Hilbert
//! symbols. Nothing here calls back into the code paths under test.
//!
//! Each suite uses its own subset of these helpers.
#![allow(dead_code)]

use motivic::brauer::Place;
use motivic::charclasses::{ClassMonomial, GradedClassPolynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// A polynomial in `nvars` commuting variables with rational
/// coefficients, truncated at total degree `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    pub nvars: usize,
    pub cap: u32,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize, cap: u32) -> Self {
        MPoly {
            nvars,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational, nvars: usize, cap: u32) -> Self {
        let mut p = Self::zero(nvars, cap);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize, cap: u32) -> Self {
        Self::constant(BigRational::one(), nvars, cap)
    }

    pub fn var(i: usize, nvars: usize, cap: u32) -> Self {
        let mut exps = vec![0u32; nvars];
        exps[i] = 1;
        let mut p = Self::zero(nvars, cap);
        if cap >= 1 {
            p.terms.insert(exps, BigRational::one());
        }
        p
    }

    fn insert(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() || exps.iter().sum::<u32>() > self.cap {
            return;
        }
        match self.terms.entry(exps) {
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

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.cap), (other.nvars, other.cap));
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars, self.cap);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * factor);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!((self.nvars, self.cap), (other.nvars, other.cap));
        let mut out = Self::zero(self.nvars, self.cap);
        for (ea, ca) in &self.terms {
            let da: u32 = ea.iter().sum();
            for (eb, cb) in &other.terms {
                if da + eb.iter().sum::<u32>() > self.cap {
                    continue;
                }
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exps, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars, self.cap);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms of exact total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = Self::zero(self.nvars, self.cap);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.insert(e.clone(), c.clone());
            }
        }
        out
    }
}

/// Elementary symmetric polynomial `e_k` of the given roots.
pub fn elementary_symmetric(roots: &[MPoly], k: usize) -> MPoly {
    let (nvars, cap) = (roots[0].nvars, roots[0].cap);
    if k == 0 {
        return MPoly::one(nvars, cap);
    }
    if k > roots.len() {
        return MPoly::zero(nvars, cap);
    }
    // Build from the product expansion prod (1 + t root_i), degree k part
    // in t, iteratively: e[j] after adding each root.
    let mut e: Vec<MPoly> = (0..=k)
        .map(|j| {
            if j == 0 {
                MPoly::one(nvars, cap)
            } else {
                MPoly::zero(nvars, cap)
            }
        })
        .collect();
    for r in roots {
        for j in (1..=k).rev() {
            let bump = e[j - 1].mul(r);
            e[j] = e[j].add(&bump);
        }
    }
    e.swap_remove(k)
}

/// Power sum `p_m` of the given roots.
pub fn power_sum(roots: &[MPoly], m: u32) -> MPoly {
    let (nvars, cap) = (roots[0].nvars, roots[0].cap);
    roots
        .iter()
        .fold(MPoly::zero(nvars, cap), |acc, r| acc.add(&r.pow(m)))
}

/// `exp(x)` truncated: `sum_k x^k / k!`.
pub fn exp_poly(x: &MPoly) -> MPoly {
    let mut acc = MPoly::one(x.nvars, x.cap);
    let mut power = MPoly::one(x.nvars, x.cap);
    let mut fact = BigRational::one();
    for k in 1..=x.cap {
        power = power.mul(x);
        if power.is_zero() {
            break;
        }
        fact *= BigRational::from(BigInt::from(k));
        acc = acc.add(&power.scale(&fact.recip()));
    }
    acc
}

/// Evaluates a universal class polynomial with `c_i` assigned the given
/// multivariate values (anything above the assignment length is zero).
pub fn evaluate_classes(p: &GradedClassPolynomial, assign: &[MPoly], nvars: usize, cap: u32) -> MPoly {
    let mut out = MPoly::zero(nvars, cap);
    for (monomial, coeff) in p.terms() {
        let mut term = MPoly::constant(coeff.clone(), nvars, cap);
        for (&i, &e) in monomial.exponents() {
            let value = assign
                .get(i as usize - 1)
                .cloned()
                .unwrap_or_else(|| MPoly::zero(nvars, cap));
            term = term.mul(&value.pow(e));
        }
        out = out.add(&term);
    }
    out
}

/// The Chern character of a formal sum of line bundles with first
/// classes `roots`, computed through the universal polynomials: rank
/// plus `sum_m S_m(e_1, e_2, ...) / m!`.
pub fn ch_via_universal_polynomials(roots: &[MPoly], cap: u32) -> MPoly {
    let nvars = roots[0].nvars;
    let assign: Vec<MPoly> = (1..=cap as usize)
        .map(|k| elementary_symmetric(roots, k))
        .collect();
    let rank = BigRational::from(BigInt::from(roots.len() as i64));
    let mut acc = MPoly::constant(rank, nvars, cap);
    let mut fact = BigRational::one();
    for m in 1..=cap {
        fact *= BigRational::from(BigInt::from(m));
        let sm = evaluate_classes(&motivic::charclasses::chern_numerator(m), &assign, nvars, cap);
        acc = acc.add(&sm.scale(&fact.recip()));
    }
    acc
}

/// Rewrites a symmetric polynomial in terms of the elementary symmetric
/// polynomials of its variables, returning the coefficients keyed by
/// class monomials (`c_t` standing for `e_t`). Standard leading-monomial
/// subtraction; panics if the input is not symmetric.
pub fn symmetric_reduction(s: &MPoly) -> BTreeMap<ClassMonomial, BigRational> {
    let nvars = s.nvars;
    let cap = s.cap;
    let es: Vec<MPoly> = (1..=nvars)
        .map(|k| elementary_symmetric(
            &(0..nvars).map(|i| MPoly::var(i, nvars, cap)).collect::<Vec<_>>(),
            k,
        ))
        .collect();
    let mut rest = s.clone();
    let mut out = BTreeMap::new();
    while !rest.is_zero() {
        // Lexicographically largest exponent vector.
        let (lead_exps, lead_coeff) = rest
            .terms
            .iter()
            .max_by(|(a, _), (b, _)| a.cmp(b))
            .map(|(e, c)| (e.clone(), c.clone()))
            .expect("nonzero polynomial has a leading term");
        let mut sorted = lead_exps.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(
            sorted, lead_exps,
            "leading exponents of a symmetric polynomial are weakly decreasing"
        );
        // e-product with multiplicities lambda_t - lambda_{t+1} on e_t.
        let mut exponents: BTreeMap<u32, u32> = BTreeMap::new();
        let mut product = MPoly::one(nvars, cap);
        for t in 0..nvars {
            let next = if t + 1 < nvars { lead_exps[t + 1] } else { 0 };
            let mult = lead_exps[t] - next;
            if mult > 0 {
                exponents.insert(t as u32 + 1, mult);
                product = product.mul(&es[t].pow(mult));
            }
        }
        out.insert(ClassMonomial::from_exponents(exponents), lead_coeff.clone());
        rest = rest.add(&product.scale(&-lead_coeff));
    }
    out
}

/// The series `x / (1 - e^{-x})` re-derived from scratch: coefficients
/// of the reciprocal of `sum_k (-x)^k / (k+1)!`.
pub fn todd_series_coefficients(cap: u32) -> Vec<BigRational> {
    let n = cap as usize;
    let mut denom = Vec::with_capacity(n + 1);
    let mut fact = BigRational::one();
    for k in 0..=n {
        fact *= BigRational::from(BigInt::from(k as i64 + 1));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        denom.push(BigRational::from(BigInt::from(sign)) / fact.clone());
    }
    let mut inv = vec![BigRational::zero(); n + 1];
    inv[0] = BigRational::one();
    for k in 1..=n {
        let mut acc = BigRational::zero();
        for j in 1..=k {
            acc += &denom[j] * &inv[k - j];
        }
        inv[k] = -acc;
    }
    inv
}

/// Brute-force local solubility of `z^2 = a x^2 + b y^2` over the
/// completion at `v`, by exhaustive search for primitive solutions
/// modulo a power of `p` high enough for Hensel lifting (squarefree
/// coefficients, margin included).
pub fn hilbert_symbol_oracle(a: &BigRational, b: &BigRational, v: Place) -> i32 {
    let a = squarefree_int(a);
    let b = squarefree_int(b);
    match v {
        Place::Real => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Finite(p) => {
            let modulus: i128 = if p == 2 { 32 } else { (p as i128).pow(3) };
            let p = p as i128;
            let mut squares_any = std::collections::HashSet::new();
            let mut squares_unit_z = std::collections::HashSet::new();
            for z in 0..modulus {
                let sq = (z * z).rem_euclid(modulus);
                squares_any.insert(sq);
                if z.rem_euclid(p) != 0 {
                    squares_unit_z.insert(sq);
                }
            }
            for x in 0..modulus {
                for y in 0..modulus {
                    let value = (a as i128 * x * x + b as i128 * y * y).rem_euclid(modulus);
                    let xy_primitive = x.rem_euclid(p) != 0 || y.rem_euclid(p) != 0;
                    let found = if xy_primitive {
                        squares_any.contains(&value)
                    } else {
                        squares_unit_z.contains(&value)
                    };
                    if found {
                        return 1;
                    }
                }
            }
            -1
        }
    }
}

fn squarefree_int(x: &BigRational) -> i64 {
    // Same square class, small representative.
    let prod = x.numer() * x.denom();
    let mut n: i64 = 1;
    let mut m = prod.abs().to_string().parse::<i64>().expect("desk scale");
    let mut p = 2i64;
    while p * p <= m {
        let mut count = 0;
        while m % p == 0 {
            m /= p;
            count += 1;
        }
        if count % 2 == 1 {
            n *= p;
        }
        p += 1;
    }
    n *= m;
    if prod.is_negative() {
        -n
    } else {
        n
    }
}

/// Closed-form Euler characteristic `chi(P^n, O(d)) = C(d + n, n)`.
pub fn binomial_euler(n: i64, d: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 1..=n {
        num *= BigInt::from(d + t);
        den *= BigInt::from(t);
    }
    num / den
}
