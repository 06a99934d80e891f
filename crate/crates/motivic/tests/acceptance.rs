//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`). Every check is exact;
//! no tolerances.

mod oracle;

use motivic::arith::{
    lemma_arith_check, todd_denominator, ArithClaim, RingTag,
};
use motivic::brauer::BrauerClass;
use motivic::charclasses::todd_polynomial;
use motivic::grr::{ch_iso_check, euler_characteristic, K0Class, ToyScheme};
use motivic::motive::sampler::{
    random_morphism, random_reconstruction_instance, random_twist_list, reconstruction_tag,
};
use motivic::motive::{
    orbit_compose, reconstruct_from_components, severi_brauer_nc_motive, AlgebraClass, NCAtom,
    OrbitMorphism,
};
use motivic::qform::{bounded_zero_search, is_anisotropic, pfister, QuadraticForm};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use oracle::{ch_via_universal_polynomials, MPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn criterion(number: u32, description: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {number:2} PASS  {description}"),
        Err(msg) => {
            println!("criterion {number:2} FAIL  {description}: {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

#[test]
fn criterion_01_todd_denominator_law() {
    criterion(1, "Todd denominators divide T_m (m <= 12), equal for m <= 8", || {
        for m in 0..=12u32 {
            let lcm: BigUint = todd_polynomial(m).lcm_denominator().magnitude().clone();
            let tm = todd_denominator(m as u64);
            ensure!((&tm % &lcm).is_zero(), "lcm denominator of Td_{m} does not divide T_{m}");
            if m <= 8 {
                ensure!(lcm == tm, "lcm denominator of Td_{m} is {lcm}, T_{m} is {tm}");
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_02_invertibility_lemma_exhaustive() {
    criterion(2, "m! and T_m invertibility verified for all d <= 12", || {
        for d in 0..=12u64 {
            for m in 0..=2 * d {
                ensure!(
                    lemma_arith_check(m, d, ArithClaim::Factorial),
                    "{m}! not invertible in Z[1/(2*{d})!]"
                );
            }
            for m in 0..=d {
                ensure!(
                    lemma_arith_check(m, d, ArithClaim::Todd),
                    "T_{m} not invertible in Z[1/(2*{d})!]"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_character_multiplicativity() {
    criterion(3, "ch multiplicative on 100 random line-bundle sums (exact)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(300);
        for case in 0..100 {
            let k1 = rng.gen_range(1..=4usize);
            let k2 = rng.gen_range(1..=4usize);
            let cap = rng.gen_range(2..=6u32);
            let nvars = k1 + k2;
            // Random line bundles: first classes are small integer
            // multiples of independent formal variables.
            let xs: Vec<MPoly> = (0..k1)
                .map(|i| {
                    let m: i64 = rng.gen_range(-2..=2);
                    MPoly::var(i, nvars, cap).scale(&rat(m))
                })
                .collect();
            let ys: Vec<MPoly> = (0..k2)
                .map(|j| {
                    let m: i64 = rng.gen_range(-2..=2);
                    MPoly::var(k1 + j, nvars, cap).scale(&rat(m))
                })
                .collect();
            let mut tensor_roots = Vec::with_capacity(k1 * k2);
            for x in &xs {
                for y in &ys {
                    tensor_roots.push(x.add(y));
                }
            }
            let lhs = ch_via_universal_polynomials(&tensor_roots, cap);
            let rhs = ch_via_universal_polynomials(&xs, cap)
                .mul(&ch_via_universal_polynomials(&ys, cap));
            ensure!(
                lhs == rhs,
                "case {case}: ch(E x F) != ch(E) ch(F) for k1={k1}, k2={k2}, D={cap}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_04_character_isomorphism_desk_scale() {
    criterion(4, "ch isomorphism over Z[1/(2n)!], failure over Z with witness", || {
        for n in 1..=4u64 {
            let report = ch_iso_check(&ToyScheme::projective(n as u32), &RingTag::for_dimension(n));
            ensure!(report.is_isomorphism, "P^{n} over Z[1/(2n)!] failed");
        }
        let square = ToyScheme::projective(1).product(&ToyScheme::projective(1));
        let report = ch_iso_check(&square, &RingTag::inverting_factorial(4));
        ensure!(report.is_isomorphism, "P1xP1 over Z[1/4!] failed");
        for n in 2..=4u32 {
            let report = ch_iso_check(&ToyScheme::projective(n), &RingTag::integers());
            ensure!(!report.is_isomorphism, "P^{n} over Z should fail");
            let witness = report.witness();
            ensure!(
                !RingTag::integers().is_unit(&witness),
                "witness for P^{n} is a unit: {witness}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_05_euler_characteristics() {
    criterion(5, "Euler characteristics match binomial counts (exact integers)", || {
        let mut cases = 0;
        for n in 1..=4u32 {
            for d in -5i64..=5 {
                let x = K0Class::line_bundle(ToyScheme::projective(n), &[d])
                    .map_err(|e| e.to_string())?;
                let chi = euler_characteristic(&x).map_err(|e| e.to_string())?;
                let expected = oracle::binomial_euler(n as i64, d);
                ensure!(chi == expected, "chi(P^{n}, O({d})) = {chi}, expected {expected}");
                cases += 1;
            }
        }
        let square = ToyScheme::projective(1).product(&ToyScheme::projective(1));
        for a in -5i64..=5 {
            for b in -5i64..=5 {
                let x = K0Class::line_bundle(square.clone(), &[a, b])
                    .map_err(|e| e.to_string())?;
                let chi = euler_characteristic(&x).map_err(|e| e.to_string())?;
                let expected = oracle::binomial_euler(1, a) * oracle::binomial_euler(1, b);
                ensure!(chi == expected, "chi(P1xP1, O({a},{b})) = {chi}, expected {expected}");
                cases += 1;
            }
        }
        ensure!(cases >= 25, "only {cases} cases exercised");
        Ok(())
    });
}

#[test]
fn criterion_06_hasse_minkowski_agreement() {
    criterion(6, "anisotropy agrees with definiteness and bounded search (500 forms)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(600);
        for case in 0..500 {
            let n = rng.gen_range(1..=5usize);
            let entries: Vec<i64> = (0..n)
                .map(|_| loop {
                    let v = rng.gen_range(-20i64..=20);
                    if v != 0 {
                        break v;
                    }
                })
                .collect();
            let q = QuadraticForm::from_integers(&entries).map_err(|e| e.to_string())?;
            let decision = is_anisotropic(&q);
            if q.is_definite() {
                ensure!(
                    decision.anisotropic,
                    "case {case}: definite form {entries:?} classified isotropic"
                );
            }
            if n <= 4 {
                if decision.anisotropic {
                    ensure!(
                        decision.witness.is_none(),
                        "case {case}: anisotropic form carries a witness"
                    );
                    ensure!(
                        bounded_zero_search(&q, 50).is_none(),
                        "case {case}: height-50 zero exists for anisotropic {entries:?}"
                    );
                } else {
                    let w = decision.witness.as_ref().ok_or_else(|| {
                        format!("case {case}: isotropic {entries:?} lacks a witness")
                    })?;
                    ensure!(
                        q.evaluate(w).is_zero() && w.iter().any(|x| !x.is_zero()),
                        "case {case}: witness does not verify"
                    );
                }
            } else {
                // Dimension 5: isotropic exactly when indefinite.
                ensure!(
                    decision.anisotropic == q.is_definite(),
                    "case {case}: dimension-5 form {entries:?} misclassified"
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_07_pfister_family() {
    criterion(7, "3-fold Pfister family: I^3 flags, quadric unit type (512 forms)", || {
        let slots = [1i64, -1, 2, -2, 3, -3, 5, -5];
        let mut checked = 0;
        for &a in &slots {
            for &b in &slots {
                for &c in &slots {
                    let p = pfister(&[rat(a), rat(b), rat(c)]).map_err(|e| e.to_string())?;
                    ensure!(p.dimension() == 8, "<<{a},{b},{c}>> has wrong dimension");
                    ensure!(
                        p.dimension() % 2 == 0 && p.has_trivial_discriminant(),
                        "<<{a},{b},{c}>> discriminant not trivial"
                    );
                    ensure!(
                        motivic::qform::clifford_invariant(&p).is_trivial(),
                        "<<{a},{b},{c}>> Clifford invariant not trivial"
                    );
                    if p.is_positive_definite() {
                        let hyp = p.prop2_hypotheses();
                        ensure!(hyp.all, "<<{a},{b},{c}>> fails the full hypothesis set");
                        let m = motivic::motive::quadric_nc_motive(&p)
                            .map_err(|e| e.to_string())?;
                        ensure!(
                            m.is_unit_type() == Some(p.dimension()),
                            "<<{a},{b},{c}>> quadric motive is not 1^{}",
                            p.dimension()
                        );
                    }
                    checked += 1;
                }
            }
        }
        ensure!(checked == 512, "expected 512 sign-pattern forms, saw {checked}");
        Ok(())
    });
}

#[test]
fn criterion_08_severi_brauer_decomposition() {
    criterion(8, "Severi-Brauer decompositions: quaternion, split, order 3", || {
        // Quaternion class at degree 2: 1 + U(A), not unit type.
        let hamilton = AlgebraClass::Concrete(BrauerClass::from_quaternion(&rat(-1), &rat(-1)));
        let m = severi_brauer_nc_motive(&hamilton, 2);
        ensure!(m.len() == 2, "degree-2 quaternionic decomposition has {} terms", m.len());
        ensure!(m.is_unit_type().is_none(), "quaternionic SB misclassified as unit type");
        ensure!(
            m.terms().iter().any(|t| matches!(t, NCAtom::Algebra { power: 1, .. })),
            "missing U(A) term"
        );
        // Trivial class at every degree d <= 6: d units.
        for d in 1..=6u64 {
            let m = severi_brauer_nc_motive(&AlgebraClass::Concrete(BrauerClass::trivial()), d);
            ensure!(
                m.is_unit_type() == Some(d as usize),
                "split SB at degree {d} is not 1^{d}"
            );
        }
        // Abstract order-3 class at degree 3: no power simplifies.
        let c3 = AlgebraClass::abstract_of_order(3);
        let m = severi_brauer_nc_motive(&c3, 3);
        ensure!(m.len() == 3, "order-3 SB has {} terms", m.len());
        let units = m.terms().iter().filter(|t| matches!(t, NCAtom::Unit)).count();
        ensure!(units == 1, "order-3 SB simplified a nontrivial power");
        Ok(())
    });
}

#[test]
fn criterion_09_twist_reconstruction() {
    criterion(9, "200 seeded reconstructions behind the information barrier", || {
        let mut rng = ChaCha8Rng::seed_from_u64(900);
        for trial in 0..200 {
            let m = rng.gen_range(1..=6usize);
            let d = rng.gen_range(0..=4u64);
            let tag = reconstruction_tag(d);
            let instance = random_reconstruction_instance(&mut rng, m, d, &tag);
            let mut expected = instance.hidden_twists.clone();
            expected.sort_unstable();
            let got = reconstruct_from_components(
                instance.f.components(),
                instance.g.components(),
                m,
                d,
                &tag,
            )
            .map_err(|e| format!("trial {trial}: {e}"))?;
            ensure!(
                got == expected,
                "trial {trial}: recovered {got:?}, hidden {expected:?}"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_10_orbit_category_laws() {
    criterion(10, "orbit laws on 200 seeded composable triples (exact)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(1000);
        for trial in 0..200 {
            let tag = reconstruction_tag(rng.gen_range(0..=2));
            let a = random_twist_list(&mut rng, 4, 3);
            let b = random_twist_list(&mut rng, 4, 3);
            let c = random_twist_list(&mut rng, 4, 3);
            let d = random_twist_list(&mut rng, 4, 3);
            let f = random_morphism(&mut rng, &a, &b, &tag);
            let g = random_morphism(&mut rng, &b, &c, &tag);
            let h = random_morphism(&mut rng, &c, &d, &tag);
            let gf = orbit_compose(&g, &f).map_err(|e| format!("trial {trial}: {e}"))?;
            let hg = orbit_compose(&h, &g).map_err(|e| format!("trial {trial}: {e}"))?;
            let left = orbit_compose(&h, &gf).map_err(|e| format!("trial {trial}: {e}"))?;
            let right = orbit_compose(&hg, &f).map_err(|e| format!("trial {trial}: {e}"))?;
            ensure!(left == right, "trial {trial}: associativity broken");
            let id_a = OrbitMorphism::identity(a, tag.clone());
            let id_b = OrbitMorphism::identity(b, tag.clone());
            let right_unit = orbit_compose(&f, &id_a).map_err(|e| e.to_string())?;
            let left_unit = orbit_compose(&id_b, &f).map_err(|e| e.to_string())?;
            ensure!(right_unit == f && left_unit == f, "trial {trial}: identity law broken");
        }
        Ok(())
    });
}
