//! Recovering the twist multiset of an object that becomes a sum of
//! units in the orbit category.
//!
//! Given mutually inverse orbit morphisms `f: X -> 1^m` and
//! `g: 1^m -> X`, with the graded components of `f` supported in
//! `{-d..0}` and those of `g` in `{0..d}`, the procedure:
//!
//! 1. assembles `alpha` by stacking `f_0, f_{-1}, ..., f_{-d}` and
//!    `beta` by concatenating `g_0, g_1, ..., g_d`;
//! 2. checks `beta . alpha = id` (the degree-zero component of
//!    `g o f`), which makes `E = alpha . beta` idempotent;
//! 3. observes that `E` is block-diagonal, one `m x m` block per twist
//!    `l` in `{0..d}`, and splits each block over the coefficient ring
//!    `Z[1/(2d)!]`;
//! 4. returns each `l` with multiplicity the rank of its block. The
//!    multiplicities sum to `m`.
//!
//! The core operates behind an information barrier: it sees only raw
//! component matrices and the tag, never the source object's twists.

use super::orbit::{orbit_compose, OrbitMorphism};
use super::MotiveError;
use crate::arith::{idempotent_split, RingTag, ScalarMatrix};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Runs the reconstruction for a mutually inverse pair of orbit
/// morphisms `f: X -> 1^m`, `g: 1^m -> X`. The inverse property is
/// re-verified; `d` bounds the twist range.
pub fn theorem1_reconstruct(
    f: &OrbitMorphism,
    g: &OrbitMorphism,
    d: u64,
) -> Result<Vec<i64>, MotiveError> {
    if f.target().iter().any(|&t| t != 0) {
        return Err(MotiveError::ShapeMismatch(
            "the target of f must be a sum of untwisted units".into(),
        ));
    }
    if g.source() != f.target() || g.target().len() != f.source().len() {
        return Err(MotiveError::ShapeMismatch(
            "g must run from the unit sum back to the source of f".into(),
        ));
    }
    let gf = orbit_compose(g, f)?;
    let fg = orbit_compose(f, g)?;
    let id_src = OrbitMorphism::identity(f.source().to_vec(), f.tag().clone());
    let id_tgt = OrbitMorphism::identity(f.target().to_vec(), f.tag().clone());
    if gf != id_src || fg != id_tgt {
        return Err(MotiveError::NotInverse);
    }
    reconstruct_from_components(f.components(), g.components(), f.target().len(), d, f.tag())
}

/// The information-barrier core: reconstructs the twist multiset from
/// raw graded components and the coefficient tag alone.
pub fn reconstruct_from_components(
    f_components: &BTreeMap<i64, ScalarMatrix>,
    g_components: &BTreeMap<i64, ScalarMatrix>,
    m: usize,
    d: u64,
    tag: &RingTag,
) -> Result<Vec<i64>, MotiveError> {
    let d_i64 = d as i64;
    for (&j, mat) in f_components.iter().chain(g_components) {
        if mat.rows() != m || mat.cols() != m {
            return Err(MotiveError::ShapeMismatch(format!(
                "component {j} is {}x{}, expected {m}x{m}",
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.tag() != tag {
            return Err(MotiveError::ShapeMismatch(format!(
                "component {j} carries tag {}, expected {tag}",
                mat.tag()
            )));
        }
    }
    for (&j, mat) in f_components {
        if !mat.is_zero() && !(-d_i64..=0).contains(&j) {
            return Err(MotiveError::RangeViolation {
                j,
                low: -d_i64,
                high: 0,
            });
        }
    }
    for (&k, mat) in g_components {
        if !mat.is_zero() && !(0..=d_i64).contains(&k) {
            return Err(MotiveError::RangeViolation {
                j: k,
                low: 0,
                high: d_i64,
            });
        }
    }

    // Verify both convolution identities from raw data: the l-th
    // component of each composite must be delta_{l,0} id.
    let id = ScalarMatrix::identity(m, tag.clone());
    let zero = ScalarMatrix::zero(m, m, tag.clone());
    for l in -2 * d_i64..=2 * d_i64 {
        let mut gf = zero.clone();
        let mut fg = zero.clone();
        for j in -d_i64..=d_i64 {
            if let (Some(gk), Some(fj)) = (g_components.get(&(l - j)), f_components.get(&j)) {
                gf = gf.add(&gk.mul(fj)?)?;
            }
            if let (Some(fj), Some(gk)) = (f_components.get(&(l - j)), g_components.get(&j)) {
                fg = fg.add(&fj.mul(gk)?)?;
            }
        }
        let expected = if l == 0 { &id } else { &zero };
        if &gf != expected || &fg != expected {
            return Err(MotiveError::NotInverse);
        }
    }

    // E = alpha . beta, block (l, l') = f_{-l} g_{l'}. Off-diagonal
    // blocks vanish for genuine orbit morphisms.
    let blocks = d as usize + 1;
    let mut twists = Vec::with_capacity(m);
    let mut total_rank = 0usize;
    for l in 0..blocks {
        for lp in 0..blocks {
            let block = match (
                f_components.get(&-(l as i64)),
                g_components.get(&(lp as i64)),
            ) {
                (Some(fl), Some(gl)) => fl.mul(gl)?,
                _ => zero.clone(),
            };
            if l != lp {
                if !block.is_zero() {
                    return Err(MotiveError::SupportViolation(format!(
                        "projector block ({l},{lp}) is nonzero"
                    )));
                }
                continue;
            }
            let split = idempotent_split(&block).map_err(|e| {
                MotiveError::NonFreeFactor(format!("block {l} failed to split: {e}"))
            })?;
            total_rank += split.rank;
            twists.extend(std::iter::repeat(l as i64).take(split.rank));
        }
    }
    if total_rank != m {
        return Err(MotiveError::NonFreeFactor(format!(
            "block ranks sum to {total_rank}, expected {m}"
        )));
    }
    Ok(twists)
}

#[allow(dead_code)]
fn is_zero_matrix(rows: &[Vec<BigRational>]) -> bool {
    rows.iter().flatten().all(BigRational::is_zero)
}
