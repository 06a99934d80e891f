//! Matrices over a localized ring, and idempotent splitting.
//!
//! All entries of a [`ScalarMatrix`] share one [`RingTag`]; the tag is
//! stored once and entries are kept as raw rationals, which is sound
//! because the ring is closed under addition and multiplication.

use super::{ArithError, LocalizedScalar, RingTag};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    tag: RingTag,
    entries: Vec<BigRational>,
}

impl ScalarMatrix {
    /// Builds a matrix from row-major rational entries, checking each
    /// against the tag.
    pub fn new(
        rows: usize,
        cols: usize,
        entries: Vec<BigRational>,
        tag: RingTag,
    ) -> Result<Self, ArithError> {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        for e in &entries {
            if let Err(prime) = tag.supports_denominator(e.denom().magnitude()) {
                return Err(ArithError::DenominatorOutsideTag {
                    denominator: e.denom().magnitude().clone(),
                    prime,
                    tag,
                });
            }
        }
        Ok(ScalarMatrix {
            rows,
            cols,
            tag,
            entries,
        })
    }

    pub fn from_integers(rows: usize, cols: usize, entries: &[i64], tag: RingTag) -> Self {
        let entries = entries
            .iter()
            .map(|&n| BigRational::from(BigInt::from(n)))
            .collect();
        Self::new(rows, cols, entries, tag).expect("integers lie in every localization")
    }

    pub fn zero(rows: usize, cols: usize, tag: RingTag) -> Self {
        ScalarMatrix {
            rows,
            cols,
            tag,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, tag: RingTag) -> Self {
        let mut m = Self::zero(n, n, tag);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn tag(&self) -> &RingTag {
        &self.tag
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) -> Result<(), ArithError> {
        if let Err(prime) = self.tag.supports_denominator(v.denom().magnitude()) {
            return Err(ArithError::DenominatorOutsideTag {
                denominator: v.denom().magnitude().clone(),
                prime,
                tag: self.tag.clone(),
            });
        }
        self.entries[r * self.cols + c] = v;
        Ok(())
    }

    /// The `(r, c)` entry as a standalone scalar.
    pub fn entry(&self, r: usize, c: usize) -> LocalizedScalar {
        LocalizedScalar::new(self.at(r, c).clone(), self.tag.clone())
            .expect("entries are tag-checked at construction")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BigRational::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_tag(&self, other: &Self) -> Result<(), ArithError> {
        if self.tag == other.tag {
            Ok(())
        } else {
            Err(ArithError::TagMismatch(self.tag.clone(), other.tag.clone()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_tag(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(ArithError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: self.cols,
            tag: self.tag.clone(),
            entries,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_tag(other)?;
        if self.cols != other.rows {
            return Err(ArithError::ShapeMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut entries = vec![BigRational::zero(); self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(ScalarMatrix {
            rows: self.rows,
            cols: other.cols,
            tag: self.tag.clone(),
            entries,
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Result<Self, ArithError> {
        let entries: Vec<BigRational> = self.entries.iter().map(|e| e * factor).collect();
        ScalarMatrix::new(self.rows, self.cols, entries, self.tag.clone())
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.at(i, i).clone())
            .sum()
    }

    pub fn is_idempotent(&self) -> bool {
        self.is_square()
            && self
                .mul(self)
                .map(|sq| sq == *self)
                .unwrap_or(false)
    }

    /// Exact determinant by rational Gaussian elimination.
    pub fn determinant(&self) -> BigRational {
        assert!(self.is_square(), "determinant of a non-square matrix");
        rational_determinant(&self.to_rows())
    }

    /// Exact inverse over the tag ring: present iff the determinant is a
    /// unit of the ring.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let inv = rational_inverse(&self.to_rows())?;
        if !self.tag.is_unit(&rational_determinant(&self.to_rows())) {
            return None;
        }
        let entries = inv.into_iter().flatten().collect();
        Some(
            ScalarMatrix::new(self.rows, self.cols, entries, self.tag.clone())
                .expect("unit determinant keeps the inverse inside the ring"),
        )
    }

    fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c).clone()).collect())
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigRational> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn apply(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }
}

/// Result of splitting an idempotent matrix over its tag ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSplit {
    pub rank: usize,
    /// Basis of the image as a free module over the tag ring; the matrix
    /// acts as the identity on each vector.
    pub image_basis: Vec<Vec<BigRational>>,
}

/// Splits an idempotent matrix over `Z[1/N]`: the image of an idempotent
/// over a localization of `Z` is a free direct summand, and its rank
/// equals the trace.
///
/// The basis is found by clearing each column's denominator (a unit of
/// the ring) and running an integer column-echelon reduction, which
/// preserves the module generated by the columns.
pub fn idempotent_split(e: &ScalarMatrix) -> Result<IdempotentSplit, ArithError> {
    if !e.is_square() || !e.is_idempotent() {
        return Err(ArithError::NotIdempotent);
    }
    let n = e.rows();
    let trace = e.trace();
    if !trace.denom().is_one() || trace.numer().is_negative() {
        return Err(ArithError::NonIntegerTrace(format!(
            "trace of idempotent is {trace}, not a non-negative integer"
        )));
    }
    let rank: usize = trace
        .numer()
        .to_string()
        .parse()
        .map_err(|_| ArithError::NonIntegerTrace(format!("trace {trace} out of range")))?;

    // Clear denominators column by column; each scaling factor is a
    // product of inverted primes, hence a unit.
    let mut cols: Vec<Vec<BigInt>> = Vec::new();
    for c in 0..n {
        let col = e.column(c);
        let lcm = col
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        cols.push(col.iter().map(|x| (x * &lcm).to_integer()).collect());
    }

    let mut basis = integer_column_echelon(cols);
    basis.retain(|col| col.iter().any(|x| !x.is_zero()));
    if basis.len() != rank {
        return Err(ArithError::NonIntegerTrace(format!(
            "echelon rank {} disagrees with trace {}",
            basis.len(),
            rank
        )));
    }

    // Strip the unit content of each basis column for tidier output.
    let image_basis: Vec<Vec<BigRational>> = basis
        .into_iter()
        .map(|col| strip_unit_content(col, e.tag()))
        .collect();

    // The matrix fixes its image pointwise; verify.
    for b in &image_basis {
        let eb = e.apply(b);
        if &eb != b {
            return Err(ArithError::NonIntegerTrace(
                "image basis vector is not fixed by the idempotent".into(),
            ));
        }
    }
    Ok(IdempotentSplit { rank, image_basis })
}

fn strip_unit_content(col: Vec<BigInt>, tag: &RingTag) -> Vec<BigRational> {
    let gcd = col.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return col.into_iter().map(BigRational::from).collect();
    }
    // Largest divisor of the gcd supported by the tag.
    let mut unit = BigUint::one();
    if let RingTag::Localized { primes, .. } = tag {
        let mut rest = gcd.magnitude().clone();
        for p in primes {
            while (&rest % p).is_zero() {
                rest /= p;
                unit *= p;
            }
        }
    } else {
        unit = gcd.magnitude().clone();
    }
    let unit = BigRational::from(BigInt::from(unit));
    col.into_iter()
        .map(|x| BigRational::from(x) / &unit)
        .collect()
}

/// Column echelon form over `Z` using unimodular column operations; the
/// module generated by the columns is preserved exactly.
fn integer_column_echelon(mut cols: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if cols.is_empty() {
        return cols;
    }
    let nrows = cols[0].len();
    let mut pivot_col = 0usize;
    for row in 0..nrows {
        if pivot_col >= cols.len() {
            break;
        }
        // Euclidean reduction across columns on this row.
        loop {
            let mut nonzero: Vec<usize> = (pivot_col..cols.len())
                .filter(|&c| !cols[c][row].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            nonzero.sort_by(|&a, &b| cols[a][row].magnitude().cmp(cols[b][row].magnitude()));
            let smallest = nonzero[0];
            if nonzero.len() == 1 {
                cols.swap(pivot_col, smallest);
                break;
            }
            for &c in &nonzero[1..] {
                let q = div_nearest(&cols[c][row], &cols[smallest][row]);
                if !q.is_zero() {
                    for r in 0..nrows {
                        let s = &cols[smallest][r] * &q;
                        cols[c][r] -= s;
                    }
                }
                if cols[c][row].magnitude() >= cols[smallest][row].magnitude()
                    && !cols[c][row].is_zero()
                {
                    // Rounding left a remainder at least as large; fall back
                    // to plain subtraction to guarantee progress.
                    for r in 0..nrows {
                        let s = cols[smallest][r].clone();
                        cols[c][r] -= s;
                    }
                }
            }
        }
        if !cols[pivot_col][row].is_zero() {
            if cols[pivot_col][row].is_negative() {
                for r in 0..nrows {
                    cols[pivot_col][r] = -cols[pivot_col][r].clone();
                }
            }
            pivot_col += 1;
        }
    }
    cols.truncate(pivot_col);
    cols
}

fn div_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    // Round a/b to the nearest integer, halving the remainder range.
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.magnitude() > b.magnitude() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Determinant of a rational matrix by fraction-preserving elimination.
pub(crate) fn rational_determinant(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else {
            return BigRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].recip();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            for c in col..n {
                let s = &m[col][c] * &factor;
                m[r][c] -= s;
            }
        }
    }
    det
}

/// Exact inverse of a rational matrix, if nonsingular.
pub(crate) fn rational_inverse(rows: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = rows.len();
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        inv.swap(pivot, col);
        let scale = m[col][col].recip();
        for c in 0..n {
            m[col][c] *= scale.clone();
            inv[col][c] *= scale.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in 0..n {
                let (a, b) = (&m[col][c] * &factor, &inv[col][c] * &factor);
                m[r][c] -= a;
                inv[r][c] -= b;
            }
        }
    }
    Some(inv)
}

/// Solves `A x = b` exactly; `None` when the system is inconsistent or
/// underdetermined in the needed columns.
#[cfg(test)]
pub(crate) fn rational_solve(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(p, rank);
        let scale = m[rank][col].recip();
        for c in col..=cols {
            m[rank][c] *= scale.clone();
        }
        for r in 0..rows {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=cols {
                let s = &m[rank][c] * &factor;
                m[r][c] -= s;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None; // inconsistent
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_splits_fully() {
        let tag = RingTag::inverting(2u32).unwrap();
        let id = ScalarMatrix::identity(2, tag);
        let s = idempotent_split(&id).unwrap();
        assert_eq!(s.rank, 2);
        assert_eq!(s.image_basis.len(), 2);
    }

    #[test]
    fn zero_splits_trivially() {
        let tag = RingTag::integers();
        let z = ScalarMatrix::zero(3, 3, tag);
        let s = idempotent_split(&z).unwrap();
        assert_eq!(s.rank, 0);
        assert!(s.image_basis.is_empty());
    }

    #[test]
    fn averaging_projector() {
        // [[1/2,1/2],[1/2,1/2]] over Z[1/2]: E^2 = E, trace 1.
        let tag = RingTag::inverting(2u32).unwrap();
        let e = ScalarMatrix::new(
            2,
            2,
            vec![rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)],
            tag,
        )
        .unwrap();
        assert!(e.is_idempotent());
        let s = idempotent_split(&e).unwrap();
        assert_eq!(s.rank, 1);
        assert_eq!(s.image_basis, vec![vec![rat(1, 1), rat(1, 1)]]);
    }

    #[test]
    fn non_idempotent_rejected() {
        let tag = RingTag::integers();
        let m = ScalarMatrix::from_integers(2, 2, &[1, 1, 0, 1], tag);
        assert_eq!(idempotent_split(&m), Err(ArithError::NotIdempotent));
    }

    #[test]
    fn projection_round_trip() {
        // Reconstructing E from its image basis gives back E exactly.
        let tag = RingTag::inverting(6u32).unwrap();
        let e = ScalarMatrix::new(
            3,
            3,
            vec![
                rat(1, 2), rat(1, 2), rat(0, 1),
                rat(1, 2), rat(1, 2), rat(0, 1),
                rat(0, 1), rat(0, 1), rat(1, 1),
            ],
            tag.clone(),
        )
        .unwrap();
        let s = idempotent_split(&e).unwrap();
        assert_eq!(s.rank, 2);
        // Solve B*C = E column by column and check the product lies in the
        // ring and reproduces E.
        let b_rows: Vec<Vec<BigRational>> = (0..3)
            .map(|r| s.image_basis.iter().map(|col| col[r].clone()).collect())
            .collect();
        for c in 0..3 {
            let target: Vec<BigRational> = (0..3).map(|r| e.at(r, c).clone()).collect();
            let x = rational_solve(&b_rows, &target).expect("columns lie in the image");
            for coeff in &x {
                assert!(tag.contains(coeff));
            }
            let rebuilt: Vec<BigRational> = (0..3)
                .map(|r| {
                    s.image_basis
                        .iter()
                        .zip(&x)
                        .map(|(col, coeff)| &col[r] * coeff)
                        .sum()
                })
                .collect();
            assert_eq!(rebuilt, target);
        }
    }

    #[test]
    fn inverse_needs_unit_determinant() {
        let z2 = RingTag::inverting(2u32).unwrap();
        let m = ScalarMatrix::from_integers(2, 2, &[1, 1, 1, 4], z2.clone());
        // det = 3: not a unit in Z[1/2].
        assert!(m.inverse().is_none());
        let z6 = RingTag::inverting(6u32).unwrap();
        let m = ScalarMatrix::from_integers(2, 2, &[1, 1, 1, 4], z6);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ScalarMatrix::identity(2, m.tag().clone()));
    }

    #[test]
    fn determinant_value() {
        let m = ScalarMatrix::from_integers(3, 3, &[2, 0, 1, 0, 3, 0, 1, 0, 1], RingTag::integers());
        assert_eq!(m.determinant(), rat(3, 1));
    }
}
