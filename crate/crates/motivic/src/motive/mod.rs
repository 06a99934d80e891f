//! Formal Chow-motive and noncommutative-motive expressions.
//!
//! A [`ChowMotiveExpr`] is a finite direct sum of twisted atoms: copies
//! of the point motive (whose non-negative twists are the Lefschetz
//! powers `L^l`) and opaque atoms standing for motives this crate does
//! not compute. An [`NCMotiveExpr`] is a sum of unit copies, algebra
//! atoms `U(A^i)` carrying a Brauer class (or an abstract cyclic class),
//! and opaque atoms.
//!
//! The decompositions produced here are the quadric and Severi-Brauer
//! ones, plus the twist-stripping transfer of direct-sum isomorphisms.
//! The orbit-category morphism calculus lives in [`mod@self`] via the
//! `orbit` submodule, and the twist reconstruction in `reconstruct`.

mod orbit;
mod reconstruct;
pub mod sampler;

pub use orbit::{orbit_compose, orbit_hom_shape, orbit_is_isomorphism, OrbitMorphism, OrbitSlot};
pub use reconstruct::{reconstruct_from_components, theorem1_reconstruct};

use crate::arith::{ArithError, RingTag};
use crate::brauer::BrauerClass;
use crate::numtheory;
use crate::qform::{clifford_invariant, QuadraticForm};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MotiveError {
    #[error("morphism shapes do not compose: {0}")]
    ShapeMismatch(String),
    #[error("internal invariant violation: twist support broken: {0}")]
    SupportViolation(String),
    #[error("the supplied morphisms are not mutually inverse")]
    NotInverse,
    #[error("component at {j} lies outside the admissible range [{low}, {high}]")]
    RangeViolation { j: i64, low: i64, high: i64 },
    #[error("internal invariant violation: direct factor is not free: {0}")]
    NonFreeFactor(String),
    #[error("coefficient ring {tag} does not invert (2*{dimension})!")]
    TagTooSmall { tag: RingTag, dimension: u64 },
    #[error("quadric construction needs dimension >= 3, got {0}")]
    DimensionTooSmall(usize),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The class datum carried by an algebra atom: an honest Brauer class of
/// `Q`, or an abstract element of a cyclic group of declared order (for
/// algebras over fields this crate does not model).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraClass {
    Concrete(BrauerClass),
    Abstract { order: u32, exponent: u32 },
}

impl AlgebraClass {
    /// An abstract class of exact order `e`.
    pub fn abstract_of_order(e: u32) -> Self {
        assert!(e >= 1);
        AlgebraClass::Abstract {
            order: e,
            exponent: if e == 1 { 0 } else { 1 },
        }
    }

    pub fn power(&self, i: u32) -> Self {
        match self {
            AlgebraClass::Concrete(c) => AlgebraClass::Concrete(c.power(i)),
            AlgebraClass::Abstract { order, exponent } => AlgebraClass::Abstract {
                order: *order,
                exponent: ((*exponent as u64 * i as u64) % *order as u64) as u32,
            },
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            AlgebraClass::Concrete(c) => c.is_trivial(),
            AlgebraClass::Abstract { exponent, .. } => *exponent == 0,
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            AlgebraClass::Concrete(c) => c.order(),
            AlgebraClass::Abstract { order, exponent } => {
                if *exponent == 0 {
                    1
                } else {
                    (*order as u64) / num_integer::gcd(*order as u64, *exponent as u64)
                }
            }
        }
    }
}

/// One summand of a noncommutative motive expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NCAtom {
    /// A copy of the unit.
    Unit,
    /// `U(A^{power})` for an algebra with base class `class`.
    Algebra { class: AlgebraClass, power: u32 },
    /// An algebra atom this crate cannot reduce (e.g. a class living
    /// over an extension field), kept as a label.
    Opaque(String),
}

impl NCAtom {
    /// The effective class of the atom: trivial atoms are unit-like.
    fn normalized(&self) -> NCAtom {
        match self {
            NCAtom::Algebra { class, power } if class.power(*power).is_trivial() => NCAtom::Unit,
            other => other.clone(),
        }
    }
}

impl fmt::Display for NCAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NCAtom::Unit => write!(f, "1"),
            NCAtom::Algebra { power: 1, .. } => write!(f, "U(A)"),
            NCAtom::Algebra { power, .. } => write!(f, "U(A^{power})"),
            NCAtom::Opaque(label) => write!(f, "U({label})"),
        }
    }
}

/// A finite direct sum of noncommutative motive atoms, kept sorted so
/// equality is multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCMotiveExpr {
    terms: Vec<NCAtom>,
}

impl NCMotiveExpr {
    pub fn new(mut terms: Vec<NCAtom>) -> Self {
        terms.sort();
        NCMotiveExpr { terms }
    }

    /// `m` copies of the unit.
    pub fn units(m: usize) -> Self {
        Self::new(vec![NCAtom::Unit; m])
    }

    pub fn terms(&self) -> &[NCAtom] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms)
    }

    /// Collapses every algebra atom whose effective class is trivial
    /// into a unit copy.
    pub fn normalize(&self) -> Self {
        Self::new(self.terms.iter().map(NCAtom::normalized).collect())
    }

    /// `Some(m)` iff the normalized expression is a sum of `m` units.
    pub fn is_unit_type(&self) -> Option<usize> {
        let normalized = self.normalize();
        normalized
            .terms
            .iter()
            .all(|t| matches!(t, NCAtom::Unit))
            .then_some(normalized.terms.len())
    }

    /// At least two summands.
    pub fn is_decomposable(&self) -> bool {
        self.terms.len() >= 2
    }
}

impl fmt::Display for NCMotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One summand of a Chow motive expression, before twisting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChowAtom {
    /// The motive of the point; with twist `l >= 0` this is the
    /// Lefschetz power `L^l`.
    Unit,
    /// A motive this crate does not compute, with its declared
    /// dimension.
    Opaque { label: String, dimension: u64 },
}

impl ChowAtom {
    pub fn dimension(&self) -> u64 {
        match self {
            ChowAtom::Unit => 0,
            ChowAtom::Opaque { dimension, .. } => *dimension,
        }
    }
}

/// A finite direct sum of twisted Chow atoms, kept sorted so equality is
/// multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChowMotiveExpr {
    terms: Vec<(ChowAtom, i64)>,
}

impl ChowMotiveExpr {
    pub fn new(mut terms: Vec<(ChowAtom, i64)>) -> Self {
        terms.sort();
        ChowMotiveExpr { terms }
    }

    /// The Lefschetz power `L^l`.
    pub fn lefschetz(l: i64) -> Self {
        Self::new(vec![(ChowAtom::Unit, l)])
    }

    pub fn unit() -> Self {
        Self::lefschetz(0)
    }

    pub fn opaque(label: impl Into<String>, dimension: u64, twist: i64) -> Self {
        Self::new(vec![(
            ChowAtom::Opaque {
                label: label.into(),
                dimension,
            },
            twist,
        )])
    }

    pub fn terms(&self) -> &[(ChowAtom, i64)] {
        &self.terms
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms)
    }

    /// Tensors every summand by `L^l`.
    pub fn twist(&self, l: i64) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|(a, t)| (a.clone(), t + l))
                .collect(),
        )
    }

    /// The largest declared dimension among the atoms.
    pub fn max_dimension(&self) -> u64 {
        self.terms
            .iter()
            .map(|(a, _)| a.dimension())
            .max()
            .unwrap_or(0)
    }

    /// `Some(multiset of twists)` iff every summand is a non-negative
    /// Lefschetz power.
    pub fn is_lefschetz_type(&self) -> Option<Vec<u64>> {
        let mut twists = Vec::with_capacity(self.terms.len());
        for (atom, twist) in &self.terms {
            match atom {
                ChowAtom::Unit if *twist >= 0 => twists.push(*twist as u64),
                _ => return None,
            }
        }
        twists.sort();
        Some(twists)
    }
}

impl fmt::Display for ChowMotiveExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, t)| match (a, t) {
                (ChowAtom::Unit, 0) => "1".to_string(),
                (ChowAtom::Unit, 1) => "L".to_string(),
                (ChowAtom::Unit, l) => format!("L^{l}"),
                (ChowAtom::Opaque { label, .. }, 0) => format!("M({label})"),
                (ChowAtom::Opaque { label, .. }, l) => format!("M({label})({l})"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The noncommutative motive of the smooth quadric attached to a
/// nonsingular form of dimension `n >= 3`.
///
/// The quadric has dimension `n - 2` and contributes that many unit
/// copies (one per exceptional line bundle); the remaining summand is
/// the even Clifford algebra part:
///
/// - even `n`, trivial discriminant, trivial Clifford invariant: two
///   more unit copies (the even Clifford algebra splits);
/// - Clifford invariant nontrivial (discriminant trivial or `n` odd): a
///   single algebra atom carrying the Clifford invariant;
/// - even `n` with nontrivial discriminant: an opaque atom tagged with
///   the discriminant extension, since the class lives over it.
pub fn quadric_nc_motive(q: &QuadraticForm) -> Result<NCMotiveExpr, MotiveError> {
    let n = q.dimension();
    if n < 3 {
        return Err(MotiveError::DimensionTooSmall(n));
    }
    let line_bundle_units = NCMotiveExpr::units(n - 2);
    let clifford_part = if n % 2 == 0 {
        if q.has_trivial_discriminant() {
            let beta = clifford_invariant(q);
            if beta.is_trivial() {
                NCMotiveExpr::units(2)
            } else {
                NCMotiveExpr::new(vec![NCAtom::Algebra {
                    class: AlgebraClass::Concrete(beta),
                    power: 1,
                }])
            }
        } else {
            let d = q.signed_determinant();
            NCMotiveExpr::new(vec![NCAtom::Opaque(format!(
                "C0 over Q(sqrt({d}))"
            ))])
        }
    } else {
        // Odd dimension: the even Clifford algebra is central simple
        // over Q; a trivial class normalizes to a unit.
        NCMotiveExpr::new(vec![NCAtom::Algebra {
            class: AlgebraClass::Concrete(clifford_invariant(q)),
            power: 1,
        }])
        .normalize()
    };
    Ok(clifford_part.direct_sum(&line_bundle_units))
}

/// The noncommutative motive of the Severi-Brauer variety of an algebra
/// with class `class` and degree `degree`:
/// `1 + U(A) + U(A^2) + ... + U(A^{degree-1})`, with every power whose
/// effective class is trivial collapsed to a unit.
pub fn severi_brauer_nc_motive(class: &AlgebraClass, degree: u64) -> NCMotiveExpr {
    assert!(degree >= 1, "Severi-Brauer varieties need degree >= 1");
    let mut terms = vec![NCAtom::Unit];
    for i in 1..degree {
        terms.push(NCAtom::Algebra {
            class: class.clone(),
            power: i as u32,
        });
    }
    NCMotiveExpr::new(terms).normalize()
}

/// Indecomposability of the Chow motive of a Severi-Brauer variety,
/// recorded by citation from degree and order data alone: the flag is
/// set when the algebra is declared division and its degree is a prime
/// power equal to its order. Nothing is computed about the motive.
pub fn chow_indecomposable_by_citation(
    order: u64,
    degree: u64,
    declared_division: bool,
) -> bool {
    if !declared_division || degree < 2 || order != degree {
        return false;
    }
    numtheory::factor(&BigUint::from(degree)).len() == 1
}

/// Transfers a direct-sum isomorphism of twisted Chow expressions to the
/// noncommutative side: strips all twists (the orbit projection) and
/// maps each atom to its declared image. The caller supplies the
/// isomorphism hypothesis as a flag; without it no claim is emitted.
///
/// Requires the coefficient tag to invert `(2d)!` for `d` the largest
/// declared dimension on either side.
pub fn theorem3_transfer(
    lhs: &ChowMotiveExpr,
    rhs: &ChowMotiveExpr,
    tag: &RingTag,
    assume_isomorphic: bool,
) -> Result<Option<(NCMotiveExpr, NCMotiveExpr)>, MotiveError> {
    let d = lhs.max_dimension().max(rhs.max_dimension());
    let needed = numtheory::factorial(2 * d);
    let as_scalar = crate::arith::LocalizedScalar::from_integer(
        num_bigint::BigInt::from(needed.clone()),
        tag.clone(),
    );
    if !crate::arith::scalar_is_invertible(&as_scalar) && !needed.is_one() {
        return Err(MotiveError::TagTooSmall {
            tag: tag.clone(),
            dimension: d,
        });
    }
    if !assume_isomorphic {
        return Ok(None);
    }
    Ok(Some((nc_image(lhs), nc_image(rhs))))
}

fn nc_image(expr: &ChowMotiveExpr) -> NCMotiveExpr {
    NCMotiveExpr::new(
        expr.terms()
            .iter()
            .map(|(atom, _twist)| match atom {
                ChowAtom::Unit => NCAtom::Unit,
                ChowAtom::Opaque { label, .. } => NCAtom::Opaque(label.clone()),
            })
            .collect(),
    )
}
