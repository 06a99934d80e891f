//! Randomized law and reconstruction suites for the orbit calculus.

use motivic::arith::{RingTag, ScalarMatrix};
use motivic::motive::sampler::{
    random_morphism, random_reconstruction_instance, random_twist_list, reconstruction_tag,
};
use motivic::motive::{
    orbit_compose, orbit_hom_shape, orbit_is_isomorphism, reconstruct_from_components,
    theorem1_reconstruct, MotiveError, OrbitMorphism,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn orbit_laws_two_hundred_seeded_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..200 {
        let tag = reconstruction_tag(rng.gen_range(0..=2));
        let a = random_twist_list(&mut rng, 4, 3);
        let b = random_twist_list(&mut rng, 4, 3);
        let c = random_twist_list(&mut rng, 4, 3);
        let d = random_twist_list(&mut rng, 4, 3);
        let f = random_morphism(&mut rng, &a, &b, &tag);
        let g = random_morphism(&mut rng, &b, &c, &tag);
        let h = random_morphism(&mut rng, &c, &d, &tag);

        let gf = orbit_compose(&g, &f).expect("compose g f");
        let hg = orbit_compose(&h, &g).expect("compose h g");
        let left = orbit_compose(&h, &gf).expect("compose h (gf)");
        let right = orbit_compose(&hg, &f).expect("compose (hg) f");
        assert_eq!(left, right, "associativity failed at trial {trial}");

        let id_a = OrbitMorphism::identity(a.clone(), tag.clone());
        let id_b = OrbitMorphism::identity(b.clone(), tag.clone());
        assert_eq!(orbit_compose(&f, &id_a).unwrap(), f, "right unit, trial {trial}");
        assert_eq!(orbit_compose(&id_b, &f).unwrap(), f, "left unit, trial {trial}");
    }
}

#[test]
fn reconstruction_two_hundred_seeded_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for trial in 0..200 {
        let m = rng.gen_range(1..=6);
        let d = rng.gen_range(0..=4);
        let tag = reconstruction_tag(d);
        let instance = random_reconstruction_instance(&mut rng, m, d, &tag);
        let mut expected = instance.hidden_twists.clone();
        expected.sort_unstable();
        // Information barrier: only components and tag cross.
        let got = reconstruct_from_components(
            instance.f.components(),
            instance.g.components(),
            m,
            d,
            &tag,
        )
        .unwrap_or_else(|e| panic!("trial {trial} failed: {e}"));
        assert_eq!(got, expected, "trial {trial}");
    }
}

#[test]
fn reconstruction_sees_only_components_and_tag() {
    // Two instances with the same hidden twists but different labels
    // feed the core identical data; and permuting the hidden labels
    // leaves the recovered multiset unchanged.
    let tag = reconstruction_tag(3);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let instance = random_reconstruction_instance(&mut rng, 5, 3, &tag);
    let mut expected = instance.hidden_twists.clone();
    expected.sort_unstable();
    let got = reconstruct_from_components(
        instance.f.components(),
        instance.g.components(),
        5,
        3,
        &tag,
    )
    .unwrap();
    assert_eq!(got, expected);

    // Permute the source summands: the flattened matrix columns (and
    // hidden labels) permute, the multiset must not change.
    let perm: [usize; 5] = [4, 2, 0, 1, 3];
    let permuted_twists: Vec<i64> = perm.iter().map(|&i| instance.hidden_twists[i]).collect();
    let mut permuted_components = std::collections::BTreeMap::new();
    for (&j, m) in instance.f.components() {
        let entries: Vec<num_rational::BigRational> = (0..5)
            .flat_map(|r| (0..5).map(move |c| m.at(r, perm[c]).clone()))
            .collect();
        let pm = ScalarMatrix::new(5, 5, entries, tag.clone()).unwrap();
        permuted_components.insert(j, pm);
    }
    // Rows of g permute the same way.
    let mut permuted_g = std::collections::BTreeMap::new();
    for (&k, m) in instance.g.components() {
        let entries: Vec<num_rational::BigRational> = (0..5)
            .flat_map(|r| (0..5).map(move |c| m.at(perm[r], c).clone()))
            .collect();
        let pm = ScalarMatrix::new(5, 5, entries, tag.clone()).unwrap();
        permuted_g.insert(k, pm);
    }
    let f2 = OrbitMorphism::new(permuted_twists.clone(), vec![0; 5], tag.clone(), permuted_components)
        .expect("permuted morphism is admissible");
    let g2 = OrbitMorphism::new(vec![0; 5], permuted_twists, tag.clone(), permuted_g)
        .expect("permuted inverse is admissible");
    let got2 =
        reconstruct_from_components(f2.components(), g2.components(), 5, 3, &tag).unwrap();
    assert_eq!(got2, expected, "label permutation changed the output");
}

#[test]
fn reconstruction_via_wrapper_checks_inverses() {
    let tag = reconstruction_tag(2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let instance = random_reconstruction_instance(&mut rng, 3, 2, &tag);
    let mut expected = instance.hidden_twists.clone();
    expected.sort_unstable();
    assert_eq!(
        theorem1_reconstruct(&instance.f, &instance.g, 2).unwrap(),
        expected
    );
    // Swapping f and g violates the unit-target shape.
    assert!(theorem1_reconstruct(&instance.g, &instance.f, 2).is_err());
}

#[test]
fn kronecker_support_never_violated_under_composition() {
    // The support constraint is re-verified on every compose; a run of
    // random composites must never trip it.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let tag = RingTag::integers();
        let a = random_twist_list(&mut rng, 3, 2);
        let b = random_twist_list(&mut rng, 3, 2);
        let c = random_twist_list(&mut rng, 3, 2);
        let f = random_morphism(&mut rng, &a, &b, &tag);
        let g = random_morphism(&mut rng, &b, &c, &tag);
        match orbit_compose(&g, &f) {
            Ok(_) => {}
            Err(MotiveError::SupportViolation(msg)) => {
                panic!("support violation on genuine morphisms: {msg}")
            }
            Err(other) => panic!("unexpected error: {other}"),
        }
    }
}

#[test]
fn hom_shape_rank_counts() {
    // Between sums of units every slot sits at j = 0 and the Hom module
    // has rank m * m'.
    let shape = orbit_hom_shape(&[0, 0, 0], &[0, 0]);
    assert_eq!(shape.len(), 6);
    assert!(shape.iter().all(|s| s.j == 0));
    // Distinct twists spread the slots across degrees.
    let shape = orbit_hom_shape(&[0, 1, 2], &[0, 1]);
    let degrees: Vec<i64> = shape.iter().map(|s| s.j).collect();
    assert_eq!(degrees.iter().filter(|&&j| j == 0).count(), 2);
    assert_eq!(degrees.iter().filter(|&&j| j == -1).count(), 2);
}

#[test]
fn isomorphism_fails_for_rank_deficient_flat_matrix() {
    let tag = RingTag::integers();
    let mut components = std::collections::BTreeMap::new();
    components.insert(0, ScalarMatrix::from_integers(2, 2, &[1, 1, 1, 1], tag.clone()));
    let f = OrbitMorphism::new(vec![0, 0], vec![0, 0], tag, components).unwrap();
    assert!(orbit_is_isomorphism(&f).is_none());
}
