//! Reproducible randomized self-test drivers: the twist-reconstruction
//! suite and the orbit-category law suite, both deterministic for a
//! fixed seed.

use crate::motive::sampler::{
    random_morphism, random_reconstruction_instance, random_twist_list, reconstruction_tag,
};
use crate::motive::{orbit_compose, reconstruct_from_components, OrbitMorphism};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Counts from one selftest run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub trials: u64,
    pub reconstruction_passes: u64,
    pub reconstruction_failures: u64,
    pub orbit_law_passes: u64,
    pub orbit_law_failures: u64,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.reconstruction_failures == 0 && self.orbit_law_failures == 0
    }
}

/// Runs `trials` rounds of each suite with a deterministic stream of
/// pseudo-random instances.
pub fn run(seed: u64, trials: u64) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SelftestReport {
        seed,
        trials,
        reconstruction_passes: 0,
        reconstruction_failures: 0,
        orbit_law_passes: 0,
        orbit_law_failures: 0,
    };
    for _ in 0..trials {
        if reconstruction_trial(&mut rng) {
            report.reconstruction_passes += 1;
        } else {
            report.reconstruction_failures += 1;
        }
        if orbit_law_trial(&mut rng) {
            report.orbit_law_passes += 1;
        } else {
            report.orbit_law_failures += 1;
        }
    }
    report
}

/// One reconstruction round: hidden twists drawn from `{0..d}`, a random
/// orbit isomorphism onto a unit sum, and recovery through the
/// information barrier (components and tag only).
fn reconstruction_trial(rng: &mut ChaCha8Rng) -> bool {
    let m = rng.gen_range(1..=6);
    let d = rng.gen_range(0..=4);
    let tag = reconstruction_tag(d);
    let instance = random_reconstruction_instance(rng, m, d, &tag);
    let mut expected = instance.hidden_twists.clone();
    expected.sort_unstable();
    match reconstruct_from_components(
        instance.f.components(),
        instance.g.components(),
        m,
        d,
        &tag,
    ) {
        Ok(twists) => twists == expected,
        Err(_) => false,
    }
}

/// One law round: associativity and identity on a random composable
/// triple, with exact component-wise equality.
fn orbit_law_trial(rng: &mut ChaCha8Rng) -> bool {
    let tag = reconstruction_tag(rng.gen_range(0..=2));
    let a = random_twist_list(rng, 4, 3);
    let b = random_twist_list(rng, 4, 3);
    let c = random_twist_list(rng, 4, 3);
    let d = random_twist_list(rng, 4, 3);
    let f = random_morphism(rng, &a, &b, &tag);
    let g = random_morphism(rng, &b, &c, &tag);
    let h = random_morphism(rng, &c, &d, &tag);

    let gf = match orbit_compose(&g, &f) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let hg = match orbit_compose(&h, &g) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let left = match orbit_compose(&h, &gf) {
        Ok(m) => m,
        Err(_) => return false,
    };
    let right = match orbit_compose(&hg, &f) {
        Ok(m) => m,
        Err(_) => return false,
    };
    if left != right {
        return false;
    }
    let id_a = OrbitMorphism::identity(a, tag.clone());
    let id_b = OrbitMorphism::identity(b, tag);
    orbit_compose(&f, &id_a).as_ref() == Ok(&f) && orbit_compose(&id_b, &f).as_ref() == Ok(&f)
}
