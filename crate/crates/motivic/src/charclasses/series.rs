//! Univariate truncated power series with exact rational coefficients.
//!
//! Just enough machinery for the Todd character series
//! `x / (1 - e^{-x})` and its logarithm.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients `c_0 + c_1 x + ... + c_n x^n` with everything above the
/// truncation dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        RationalSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        RationalSeries { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Self {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "series with zero constant term");
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        let c0_inv = c0.recip();
        out[0] = c0_inv.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &c0_inv;
        }
        RationalSeries { coeffs: out }
    }

    /// Formal logarithm of a series with constant term 1:
    /// `log(1 + u) = u - u^2/2 + u^3/3 - ...`.
    pub fn log(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "log needs constant term 1");
        let n = self.truncation();
        let mut u = self.clone();
        u.coeffs[0] = BigRational::zero();
        let mut acc = RationalSeries {
            coeffs: vec![BigRational::zero(); n + 1],
        };
        let mut power = RationalSeries {
            coeffs: {
                let mut v = vec![BigRational::zero(); n + 1];
                v[0] = BigRational::one();
                v
            },
        };
        for k in 1..=n {
            power = power.mul(&u);
            if power.coeffs.iter().all(BigRational::is_zero) {
                break;
            }
            let sign = if k % 2 == 1 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            let factor = sign / BigRational::from(BigInt::from(k));
            for (a, p) in acc.coeffs.iter_mut().zip(&power.coeffs) {
                *a += p * &factor;
            }
        }
        acc
    }
}

/// The series `x / (1 - e^{-x})` up to `x^truncation`: the reciprocal of
/// `sum_{k>=0} (-1)^k x^k / (k+1)!`.
pub(crate) fn todd_character_series(truncation: u32) -> RationalSeries {
    let n = truncation as usize;
    let mut denom = Vec::with_capacity(n + 1);
    let mut fact = BigRational::one(); // (k+1)! running
    for k in 0..=n {
        fact *= BigRational::from(BigInt::from(k as i64 + 1));
        let sign = if k % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        denom.push(sign / fact.clone());
    }
    RationalSeries::from_coeffs(denom).inverse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn todd_series_low_terms() {
        // x/(1-e^{-x}) = 1 + x/2 + x^2/12 + 0*x^3 - x^4/720 + ...
        let q = todd_character_series(4);
        assert_eq!(q.coefficient(0), rat(1, 1));
        assert_eq!(q.coefficient(1), rat(1, 2));
        assert_eq!(q.coefficient(2), rat(1, 12));
        assert_eq!(q.coefficient(3), rat(0, 1));
        assert_eq!(q.coefficient(4), rat(-1, 720));
    }

    #[test]
    fn inverse_round_trip() {
        let q = todd_character_series(6);
        let prod = q.mul(&q.inverse());
        assert_eq!(prod.coefficient(0), rat(1, 1));
        for k in 1..=6 {
            assert_eq!(prod.coefficient(k), rat(0, 1), "x^{k} coefficient");
        }
    }

    #[test]
    fn log_of_exponential() {
        // log(e^x) = x, using e^x = sum x^k/k!.
        let mut coeffs = Vec::new();
        let mut fact = BigRational::one();
        for k in 0..=6u32 {
            if k > 0 {
                fact *= BigRational::from(BigInt::from(k));
            }
            coeffs.push(fact.recip());
        }
        let e = RationalSeries::from_coeffs(coeffs);
        let l = e.log();
        assert_eq!(l.coefficient(1), rat(1, 1));
        for k in [0usize, 2, 3, 4, 5, 6] {
            assert_eq!(l.coefficient(k), rat(0, 1), "x^{k} coefficient");
        }
    }
}
