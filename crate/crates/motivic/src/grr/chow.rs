//! The Chow ring of a product of projective spaces: polynomials in the
//! hyperplane generators `h_1, ..., h_k` truncated by
//! `h_j^{n_j+1} = 0`, with coefficients constrained to a tag ring.

use super::{GrrError, ToyScheme};
use crate::arith::{ArithError, RingTag};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    scheme: ToyScheme,
    tag: RingTag,
    coeffs: Vec<BigRational>,
}

impl ChowClass {
    /// Builds a class from coefficients in enumeration order, checking
    /// every denominator against the tag.
    pub fn new(
        scheme: ToyScheme,
        tag: RingTag,
        coeffs: Vec<BigRational>,
    ) -> Result<Self, ArithError> {
        assert_eq!(coeffs.len(), scheme.rank(), "coefficient count must match rank");
        for c in &coeffs {
            if let Err(prime) = tag.supports_denominator(c.denom().magnitude()) {
                return Err(ArithError::DenominatorOutsideTag {
                    denominator: c.denom().magnitude().clone(),
                    prime,
                    tag,
                });
            }
        }
        Ok(ChowClass {
            scheme,
            tag,
            coeffs,
        })
    }

    pub fn zero(scheme: ToyScheme, tag: RingTag) -> Self {
        let coeffs = vec![BigRational::zero(); scheme.rank()];
        ChowClass {
            scheme,
            tag,
            coeffs,
        }
    }

    pub fn one(scheme: ToyScheme, tag: RingTag) -> Self {
        let mut c = Self::zero(scheme, tag);
        c.coeffs[0] = BigRational::one();
        c
    }

    /// The hyperplane generator of the `j`-th factor.
    pub fn hyperplane(scheme: ToyScheme, tag: RingTag, j: usize) -> Self {
        assert!(j < scheme.factors().len());
        let mut degree = vec![0u32; scheme.factors().len()];
        degree[j] = 1;
        let mut c = Self::zero(scheme, tag);
        if c.scheme.factors()[j] >= 1 {
            let idx = c.scheme.index_of(&degree);
            c.coeffs[idx] = BigRational::one();
        }
        c
    }

    pub fn scheme(&self) -> &ToyScheme {
        &self.scheme
    }

    pub fn tag(&self) -> &RingTag {
        &self.tag
    }

    pub fn coefficient(&self, degree: &[u32]) -> BigRational {
        self.coeffs[self.scheme.index_of(degree)].clone()
    }

    /// Nonzero terms as `(multidegree, coefficient)` in enumeration
    /// order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (Vec<u32>, &BigRational)> {
        self.scheme
            .multidegrees()
            .into_iter()
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GrrError> {
        if self.scheme != other.scheme {
            return Err(GrrError::SchemeMismatch(
                other.scheme.clone(),
                self.scheme.clone(),
            ));
        }
        if self.tag != other.tag {
            return Err(GrrError::Arith(ArithError::TagMismatch(
                self.tag.clone(),
                other.tag.clone(),
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, GrrError> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ChowClass {
            scheme: self.scheme.clone(),
            tag: self.tag.clone(),
            coeffs,
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Result<Self, ArithError> {
        let coeffs = self.coeffs.iter().map(|c| c * factor).collect();
        ChowClass::new(self.scheme.clone(), self.tag.clone(), coeffs)
    }

    /// Product in the Chow ring; multidegrees exceeding a factor bound
    /// vanish by the relation `h_j^{n_j+1} = 0`.
    pub fn mul(&self, other: &Self) -> Result<Self, GrrError> {
        self.check_compatible(other)?;
        let degrees = self.scheme.multidegrees();
        let factors = self.scheme.factors();
        let mut coeffs = vec![BigRational::zero(); self.scheme.rank()];
        for (da, ca) in degrees.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            'terms: for (db, cb) in degrees.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let mut sum = vec![0u32; factors.len()];
                for j in 0..factors.len() {
                    sum[j] = da[j] + db[j];
                    if sum[j] > factors[j] {
                        continue 'terms;
                    }
                }
                coeffs[self.scheme.index_of(&sum)] += ca * cb;
            }
        }
        Ok(ChowClass {
            scheme: self.scheme.clone(),
            tag: self.tag.clone(),
            coeffs,
        })
    }

    /// Multiplicative inverse within the truncation, present when the
    /// constant term is a unit of the tag ring (which keeps every
    /// coefficient of the inverse inside the ring).
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs[0].clone();
        if !self.tag.is_unit(&c0) {
            return None;
        }
        // self = c0 (1 - u) with u topologically nilpotent; invert by the
        // geometric series, which terminates at the total dimension.
        let c0_inv = c0.recip();
        let u = {
            let mut coeffs: Vec<BigRational> =
                self.coeffs.iter().map(|c| -(c * &c0_inv)).collect();
            coeffs[0] = BigRational::zero();
            ChowClass {
                scheme: self.scheme.clone(),
                tag: self.tag.clone(),
                coeffs,
            }
        };
        let mut acc = ChowClass::one(self.scheme.clone(), self.tag.clone());
        let mut power = ChowClass::one(self.scheme.clone(), self.tag.clone());
        for _ in 0..=self.scheme.dimension() {
            power = power.mul(&u).expect("same scheme and tag");
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power).expect("same scheme and tag");
        }
        acc.scale(&c0_inv).ok()
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let single = self.scheme.factors().len() == 1;
        let mut ordered: Vec<(Vec<u32>, &BigRational)> = self.iter_nonzero().collect();
        ordered.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut parts = Vec::new();
        for (degree, c) in ordered {
            let mono: Vec<String> = degree
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    let var = if single {
                        "h".to_string()
                    } else {
                        format!("h{}", j + 1)
                    };
                    if e == 1 {
                        var
                    } else {
                        format!("{var}^{e}")
                    }
                })
                .collect();
            let coeff = crate::arith::format_rational(c);
            parts.push(if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono.join("*")
            } else if *c == -BigRational::from(BigInt::one()) {
                format!("-{}", mono.join("*"))
            } else {
                format!("{coeff}*{}", mono.join("*"))
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let joined = parts.join(" + ").replace("+ -", "- ");
        write!(f, "{joined}")
    }
}
