//! K-theory classes on products of projective spaces, in the basis of
//! line bundles `O(i_1, ..., i_k)` with `0 <= i_j <= n_j`.
//!
//! Twists outside that window are reduced into the basis through the
//! relation `([O(1)] - 1)^{n+1} = 0` on each factor, so arbitrary
//! integer multidegrees can be entered exactly.

use super::{GrrError, ToyScheme};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Class {
    scheme: ToyScheme,
    coeffs: Vec<BigInt>,
}

impl K0Class {
    pub fn zero(scheme: ToyScheme) -> Self {
        let coeffs = vec![BigInt::zero(); scheme.rank()];
        K0Class { scheme, coeffs }
    }

    /// The basis class `[O(i_1, ..., i_k)]` with every `i_j` inside the
    /// window.
    pub fn basis_bundle(scheme: ToyScheme, degree: &[u32]) -> Result<Self, GrrError> {
        if degree.len() != scheme.factors().len()
            || degree.iter().zip(scheme.factors()).any(|(&i, &n)| i > n)
        {
            return Err(GrrError::BadMultidegree(
                degree.iter().map(|&i| i as i64).collect(),
                scheme,
            ));
        }
        let mut c = Self::zero(scheme);
        let idx = c.scheme.index_of(degree);
        c.coeffs[idx] = BigInt::one();
        Ok(c)
    }

    /// `[O(d_1, ..., d_k)]` for arbitrary integer degrees, expanded in
    /// the basis via `[O(d)] = ((1 + t)^d mod t^{n+1})` with
    /// `t = [O(1)] - 1` on each factor.
    pub fn line_bundle(scheme: ToyScheme, degrees: &[i64]) -> Result<Self, GrrError> {
        if degrees.len() != scheme.factors().len() {
            return Err(GrrError::BadMultidegree(degrees.to_vec(), scheme));
        }
        // Per-factor expansion of O(d) as coefficients over O(0..n).
        let per_factor: Vec<Vec<BigInt>> = scheme
            .factors()
            .iter()
            .zip(degrees)
            .map(|(&n, &d)| expand_twist(n, d))
            .collect();
        let mut c = Self::zero(scheme);
        for (pos, e) in c.scheme.multidegrees().iter().enumerate() {
            let mut term = BigInt::one();
            for (j, &ej) in e.iter().enumerate() {
                term *= &per_factor[j][ej as usize];
            }
            c.coeffs[pos] = term;
        }
        Ok(c)
    }

    pub fn scheme(&self) -> &ToyScheme {
        &self.scheme
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (Vec<u32>, &BigInt)> {
        self.scheme
            .multidegrees()
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GrrError> {
        if self.scheme != other.scheme {
            return Err(GrrError::SchemeMismatch(
                other.scheme.clone(),
                self.scheme.clone(),
            ));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(K0Class {
            scheme: self.scheme.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GrrError> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        K0Class {
            scheme: self.scheme.clone(),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// External product on the product scheme.
    pub fn external_product(&self, other: &Self) -> Self {
        let scheme = self.scheme.product(&other.scheme);
        let mut coeffs = Vec::with_capacity(scheme.rank());
        for a in &self.coeffs {
            for b in &other.coeffs {
                coeffs.push(a * b);
            }
        }
        K0Class { scheme, coeffs }
    }
}

/// Coefficients of `[O(d)]` over the basis `[O(0)], ..., [O(n)]` on
/// `P^n`: compute `(1 + t)^d` in `Z[t]/(t^{n+1})`, then rewrite powers
/// of `t = [O(1)] - 1`.
fn expand_twist(n: u32, d: i64) -> Vec<BigInt> {
    let len = n as usize + 1;
    // Generalized binomial coefficients C(d, k), k = 0..n.
    let mut binoms = Vec::with_capacity(len);
    let mut acc = BigInt::one();
    binoms.push(acc.clone());
    for k in 1..len {
        acc = acc * BigInt::from(d - (k as i64 - 1)) / BigInt::from(k as i64);
        binoms.push(acc.clone());
    }
    // t^k = sum_j (-1)^{k-j} C(k, j) [O(j)].
    let mut out = vec![BigInt::zero(); len];
    for (k, b) in binoms.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let mut c = BigInt::one(); // C(k, j), j running up
        for j in 0..=k {
            let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
            out[j] += b * &c * BigInt::from(sign);
            if j < k {
                c = c * BigInt::from((k - j) as i64) / BigInt::from(j as i64 + 1);
            }
        }
    }
    out
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (degree, c) in self.iter_nonzero() {
            let ds: Vec<String> = degree.iter().map(|i| i.to_string()).collect();
            let bundle = format!("O({})", ds.join(","));
            parts.push(if c.is_one() {
                bundle
            } else {
                format!("{c}*{bundle}")
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

/// Parses `"O(i)"` or `"O(i,j)"` into a line-bundle class on the scheme.
pub fn parse_bundle(s: &str, scheme: &ToyScheme) -> Result<K0Class, GrrError> {
    let err = || GrrError::Parse {
        what: "bundle",
        input: s.to_string(),
    };
    let inner = s
        .trim()
        .strip_prefix("O(")
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(err)?;
    let degrees = inner
        .split(',')
        .map(|part| i64::from_str(part.trim()).map_err(|_| err()))
        .collect::<Result<Vec<i64>, GrrError>>()?;
    K0Class::line_bundle(scheme.clone(), &degrees)
}
