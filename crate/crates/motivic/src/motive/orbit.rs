//! Morphisms between Lefschetz-type objects in the orbit category.
//!
//! Objects are finite sums of Lefschetz powers, recorded by their twist
//! lists. A morphism is a finite family of graded components: the
//! component at `j` is a matrix whose `(r, s)` entry may be nonzero only
//! when `target[r] - j = source[s]`, because morphisms between Lefschetz
//! powers are concentrated in one degree. Composition convolves the
//! components: the `l`-th component of `g o f` is `sum_j g_{l-j} f_j`.

use super::MotiveError;
use crate::arith::{RingTag, ScalarMatrix};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// An admissible slot of a morphism between twist lists: the component
/// degree `j` and the matrix position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitSlot {
    pub j: i64,
    pub row: usize,
    pub col: usize,
}

/// All slots where a nonzero scalar is permitted, each free of rank one:
/// `(r, s)` contributes at exactly `j = target[r] - source[s]`.
pub fn orbit_hom_shape(source: &[i64], target: &[i64]) -> Vec<OrbitSlot> {
    let mut slots = Vec::with_capacity(source.len() * target.len());
    for (row, &q) in target.iter().enumerate() {
        for (col, &p) in source.iter().enumerate() {
            slots.push(OrbitSlot { j: q - p, row, col });
        }
    }
    slots.sort();
    slots
}

/// A morphism between Lefschetz-type objects in the orbit category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitMorphism {
    source: Vec<i64>,
    target: Vec<i64>,
    tag: RingTag,
    components: BTreeMap<i64, ScalarMatrix>,
}

impl OrbitMorphism {
    /// Builds a morphism, verifying shapes and the twist-support
    /// constraint on every entry.
    pub fn new(
        source: Vec<i64>,
        target: Vec<i64>,
        tag: RingTag,
        components: BTreeMap<i64, ScalarMatrix>,
    ) -> Result<Self, MotiveError> {
        let mut kept = BTreeMap::new();
        for (j, m) in components {
            if m.rows() != target.len() || m.cols() != source.len() {
                return Err(MotiveError::ShapeMismatch(format!(
                    "component {j} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.len(),
                    source.len()
                )));
            }
            if m.tag() != &tag {
                return Err(MotiveError::ShapeMismatch(format!(
                    "component {j} carries tag {}, expected {}",
                    m.tag(),
                    tag
                )));
            }
            for (row, &q) in target.iter().enumerate() {
                for (col, &p) in source.iter().enumerate() {
                    if q - j != p && !m.at(row, col).is_zero() {
                        return Err(MotiveError::SupportViolation(format!(
                            "entry ({row},{col}) of component {j} violates {q} - {j} = {p}"
                        )));
                    }
                }
            }
            if !m.is_zero() {
                kept.insert(j, m);
            }
        }
        Ok(OrbitMorphism {
            source,
            target,
            tag,
            components: kept,
        })
    }

    /// The identity on a Lefschetz-type object.
    pub fn identity(twists: Vec<i64>, tag: RingTag) -> Self {
        let id = ScalarMatrix::identity(twists.len(), tag.clone());
        let mut components = BTreeMap::new();
        components.insert(0, id);
        OrbitMorphism::new(twists.clone(), twists, tag, components)
            .expect("identity respects every twist constraint")
    }

    pub fn source(&self) -> &[i64] {
        &self.source
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    pub fn tag(&self) -> &RingTag {
        &self.tag
    }

    pub fn components(&self) -> &BTreeMap<i64, ScalarMatrix> {
        &self.components
    }

    pub fn component(&self, j: i64) -> Option<&ScalarMatrix> {
        self.components.get(&j)
    }

    /// The single possibly-nonzero coefficient connecting source summand
    /// `col` to target summand `row`, read off the component at the
    /// admissible degree.
    pub fn flattened_entry(&self, row: usize, col: usize) -> BigRational {
        let j = self.target[row] - self.source[col];
        self.components
            .get(&j)
            .map(|m| m.at(row, col).clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// The square matrix over the tag ring indexed by admissible slots.
    pub fn flatten(&self) -> ScalarMatrix {
        let rows = self.target.len();
        let cols = self.source.len();
        let entries: Vec<BigRational> = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| self.flattened_entry(r, c)))
            .collect();
        ScalarMatrix::new(rows, cols, entries, self.tag.clone())
            .expect("entries come from tag-checked components")
    }
}

/// Composition in the orbit category: `the l-th component of g o f is
/// the finite sum over j of g_{l-j} f_j`.
pub fn orbit_compose(g: &OrbitMorphism, f: &OrbitMorphism) -> Result<OrbitMorphism, MotiveError> {
    if f.target != g.source {
        return Err(MotiveError::ShapeMismatch(format!(
            "target twists {:?} do not match source twists {:?}",
            f.target, g.source
        )));
    }
    if f.tag != g.tag {
        return Err(MotiveError::ShapeMismatch(format!(
            "tags differ: {} vs {}",
            f.tag, g.tag
        )));
    }
    let mut components: BTreeMap<i64, ScalarMatrix> = BTreeMap::new();
    for (&j, fj) in &f.components {
        for (&k, gk) in &g.components {
            let l = j + k;
            let product = gk.mul(fj)?;
            let entry = components
                .entry(l)
                .or_insert_with(|| ScalarMatrix::zero(g.target.len(), f.source.len(), f.tag.clone()));
            *entry = entry.add(&product)?;
        }
    }
    // Re-verify the support constraint on the result.
    OrbitMorphism::new(f.source.clone(), g.target.clone(), f.tag.clone(), components)
}

/// Tests invertibility in the orbit category by flattening to a square
/// matrix over the tag ring and inverting it exactly; returns the
/// inverse morphism when the determinant is a unit of the ring.
pub fn orbit_is_isomorphism(f: &OrbitMorphism) -> Option<OrbitMorphism> {
    if f.source.len() != f.target.len() {
        return None;
    }
    let flat = f.flatten();
    let inverse = flat.inverse()?;
    // Repackage: the (s, r) entry of the inverse sits in the component
    // at source[s] - target[r].
    let mut components: BTreeMap<i64, ScalarMatrix> = BTreeMap::new();
    let n = f.source.len();
    for s in 0..n {
        for r in 0..n {
            let v = inverse.at(s, r);
            if v.is_zero() {
                continue;
            }
            let k = f.source[s] - f.target[r];
            let entry = components
                .entry(k)
                .or_insert_with(|| ScalarMatrix::zero(n, n, f.tag.clone()));
            entry
                .set(s, r, v.clone())
                .expect("inverse entries lie in the ring");
        }
    }
    let g = OrbitMorphism::new(f.target.clone(), f.source.clone(), f.tag.clone(), components)
        .expect("inverse of an admissible matrix is admissible");
    debug_assert!({
        let gf = orbit_compose(&g, f).unwrap();
        gf == OrbitMorphism::identity(f.source.clone(), f.tag.clone())
    });
    Some(g)
}
