//! Nonsingular quadratic forms over `Q` and their classical invariants.
//!
//! Forms are kept in diagonal shape `<a_1, ..., a_n>`; a Gram matrix can
//! be diagonalized on entry, with the congruence witness retained. The
//! invariants follow the standard definitions: determinant and signed
//! determinant modulo squares, the Hasse invariant as a product of
//! Hilbert symbols, the Clifford invariant via the dimension mod 8
//! correction table, and anisotropy by the local-global principle.

mod clifford;
mod hilbert;
mod isotropy;

pub use clifford::{clifford_invariant, hasse_invariant, relevant_places};
pub use hilbert::{hilbert_symbol, is_local_square};
pub use isotropy::{bounded_zero_search, is_anisotropic, IsotropyDecision};

use crate::numtheory::squarefree_part;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QFormError {
    #[error("quadratic forms must be nonsingular; entry {0} is zero")]
    SingularDiagonal(usize),
    #[error("Gram matrix is singular")]
    Singular,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("forms must have at least one variable")]
    Empty,
}

/// A nonzero squarefree integer representing a rational square class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    representative: BigInt,
}

impl SquareClass {
    pub fn of(x: &BigRational) -> Self {
        SquareClass {
            representative: squarefree_part(x),
        }
    }

    pub fn representative(&self) -> &BigInt {
        &self.representative
    }

    pub fn is_one(&self) -> bool {
        self.representative.is_one()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative)
    }
}

/// How a diagonal form was obtained from a Gram matrix: the congruence
/// `P^T G P = diag` is verified at construction and kept for audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramProvenance {
    pub gram: Vec<Vec<BigRational>>,
    pub basis_change: Vec<Vec<BigRational>>,
}

/// A nonsingular diagonal quadratic form over `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    diagonal: Vec<BigRational>,
    provenance: Option<GramProvenance>,
}

impl QuadraticForm {
    /// Builds `<a_1, ..., a_n>`; every entry must be nonzero.
    pub fn diagonal(entries: Vec<BigRational>) -> Result<Self, QFormError> {
        if entries.is_empty() {
            return Err(QFormError::Empty);
        }
        for (i, a) in entries.iter().enumerate() {
            if a.is_zero() {
                return Err(QFormError::SingularDiagonal(i));
            }
        }
        Ok(QuadraticForm {
            diagonal: entries,
            provenance: None,
        })
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self, QFormError> {
        Self::diagonal(
            entries
                .iter()
                .map(|&n| BigRational::from(BigInt::from(n)))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.diagonal
    }

    pub fn dimension(&self) -> usize {
        self.diagonal.len()
    }

    pub fn provenance(&self) -> Option<&GramProvenance> {
        self.provenance.as_ref()
    }

    /// Evaluates the form at a vector.
    pub fn evaluate(&self, x: &[BigRational]) -> BigRational {
        assert_eq!(x.len(), self.dimension());
        self.diagonal
            .iter()
            .zip(x)
            .map(|(a, xi)| a * xi * xi)
            .sum()
    }

    /// Determinant `prod a_i` as a square class.
    pub fn determinant(&self) -> SquareClass {
        let prod: BigRational = self.diagonal.iter().product();
        SquareClass::of(&prod)
    }

    /// Signed determinant `(-1)^{n(n-1)/2} det` as a square class.
    pub fn signed_determinant(&self) -> SquareClass {
        let n = self.dimension();
        let mut prod: BigRational = self.diagonal.iter().product();
        if (n * (n - 1) / 2) % 2 == 1 {
            prod = -prod;
        }
        SquareClass::of(&prod)
    }

    /// Trivial discriminant: the signed determinant is a square.
    pub fn has_trivial_discriminant(&self) -> bool {
        self.signed_determinant().is_one()
    }

    /// Orthogonal sum: concatenated diagonals.
    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let mut diagonal = self.diagonal.clone();
        diagonal.extend(other.diagonal.iter().cloned());
        QuadraticForm {
            diagonal,
            provenance: None,
        }
    }

    /// Tensor product: all pairwise products, in row-major order.
    pub fn tensor_product(&self, other: &Self) -> Self {
        let diagonal = self
            .diagonal
            .iter()
            .flat_map(|a| other.diagonal.iter().map(move |b| a * b))
            .collect();
        QuadraticForm {
            diagonal,
            provenance: None,
        }
    }

    /// Square-class multiset of the diagonal, for isometry-insensitive
    /// comparisons.
    pub fn square_class_multiset(&self) -> Vec<BigInt> {
        let mut classes: Vec<BigInt> = self
            .diagonal
            .iter()
            .map(|a| squarefree_part(a))
            .collect();
        classes.sort();
        classes
    }

    pub fn is_positive_definite(&self) -> bool {
        self.diagonal.iter().all(|a| a.is_positive())
    }

    pub fn is_negative_definite(&self) -> bool {
        self.diagonal.iter().all(|a| a.is_negative())
    }

    pub fn is_definite(&self) -> bool {
        self.is_positive_definite() || self.is_negative_definite()
    }

    /// Membership of the Witt class in the third power of the fundamental
    /// ideal: even dimension, trivial discriminant, trivial Clifford
    /// invariant.
    pub fn in_i3_wittclass(&self) -> bool {
        self.dimension() % 2 == 0
            && self.has_trivial_discriminant()
            && clifford_invariant(self).is_trivial()
    }

    /// The four flags governing the quadric decomposition, plus their
    /// conjunction.
    pub fn prop2_hypotheses(&self) -> HypothesisReport {
        let even_dimension = self.dimension() % 2 == 0;
        let trivial_discriminant = self.has_trivial_discriminant();
        let trivial_clifford = clifford_invariant(self).is_trivial();
        let anisotropic = is_anisotropic(self).anisotropic;
        HypothesisReport {
            even_dimension,
            trivial_discriminant,
            trivial_clifford,
            anisotropic,
            all: even_dimension && trivial_discriminant && trivial_clifford && anisotropic,
        }
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .diagonal
            .iter()
            .map(crate::arith::format_rational)
            .collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// Flag report for the quadric hypotheses: even dimension, trivial
/// discriminant, trivial Clifford invariant, anisotropy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypothesisReport {
    pub even_dimension: bool,
    pub trivial_discriminant: bool,
    pub trivial_clifford: bool,
    pub anisotropic: bool,
    pub all: bool,
}

/// The iterated Pfister form `<1, a_1> x ... x <1, a_k>` of dimension
/// `2^k`.
pub fn pfister(slots: &[BigRational]) -> Result<QuadraticForm, QFormError> {
    if slots.is_empty() {
        return QuadraticForm::diagonal(vec![BigRational::one()]);
    }
    let mut acc = QuadraticForm::diagonal(vec![BigRational::one(), slots[0].clone()])?;
    for a in &slots[1..] {
        let factor = QuadraticForm::diagonal(vec![BigRational::one(), a.clone()])?;
        acc = acc.tensor_product(&factor);
    }
    Ok(acc)
}

/// Diagonalizes a symmetric Gram matrix by congruence, retaining the
/// basis-change witness.
pub fn diagonalize(gram: &[Vec<BigRational>]) -> Result<QuadraticForm, QFormError> {
    let n = gram.len();
    if n == 0 {
        return Err(QFormError::Empty);
    }
    for row in gram {
        if row.len() != n {
            return Err(QFormError::NotSymmetric);
        }
    }
    for r in 0..n {
        for c in 0..r {
            if gram[r][c] != gram[c][r] {
                return Err(QFormError::NotSymmetric);
            }
        }
    }
    if crate::arith::matrix_determinant(gram).is_zero() {
        return Err(QFormError::Singular);
    }

    // Symmetric Gaussian elimination tracking P with P^T G P diagonal;
    // P's columns express the new basis in the old coordinates.
    let mut g: Vec<Vec<BigRational>> = gram.to_vec();
    let mut p: Vec<Vec<BigRational>> = (0..n)
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

    let swap_basis = |g: &mut Vec<Vec<BigRational>>, p: &mut Vec<Vec<BigRational>>, i: usize, j: usize| {
        for row in g.iter_mut() {
            row.swap(i, j);
        }
        g.swap(i, j);
        for row in p.iter_mut() {
            row.swap(i, j);
        }
    };
    // e_i <- e_i + t e_j, updating G and P.
    let add_basis = |g: &mut Vec<Vec<BigRational>>,
                     p: &mut Vec<Vec<BigRational>>,
                     i: usize,
                     j: usize,
                     t: &BigRational| {
        for r in 0..n {
            let v = &g[r][j] * t;
            g[r][i] += v;
        }
        for c in 0..n {
            let v = &g[j][c] * t;
            g[i][c] += v;
        }
        for r in 0..n {
            let v = &p[r][j] * t;
            p[r][i] += v;
        }
    };

    for k in 0..n {
        if g[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !g[j][j].is_zero()) {
                swap_basis(&mut g, &mut p, k, j);
            } else {
                // All remaining diagonal entries vanish; a nonzero
                // off-diagonal entry exists because the form is
                // nonsingular.
                let j = (k + 1..n)
                    .find(|&j| !g[k][j].is_zero())
                    .expect("nonsingular block has a nonzero pairing");
                add_basis(&mut g, &mut p, k, j, &BigRational::one());
            }
        }
        let pivot = g[k][k].clone();
        for j in k + 1..n {
            if g[k][j].is_zero() {
                continue;
            }
            let t = -(&g[k][j] / &pivot);
            add_basis(&mut g, &mut p, j, k, &t);
        }
    }

    let diagonal: Vec<BigRational> = (0..n).map(|i| g[i][i].clone()).collect();
    // Verify the congruence witness exactly.
    for r in 0..n {
        for c in 0..n {
            let mut acc = BigRational::zero();
            for i in 0..n {
                for j in 0..n {
                    acc += &p[i][r] * &gram[i][j] * &p[j][c];
                }
            }
            let expected = if r == c {
                diagonal[r].clone()
            } else {
                BigRational::zero()
            };
            assert_eq!(acc, expected, "congruence witness failed at ({r},{c})");
        }
    }

    let mut form = QuadraticForm::diagonal(diagonal)?;
    form.provenance = Some(GramProvenance {
        gram: gram.to_vec(),
        basis_change: p,
    });
    Ok(form)
}
