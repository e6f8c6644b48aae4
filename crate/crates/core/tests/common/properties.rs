//! Randomized properties of the derivation complex over the library
//! contexts. Each check panics on a counterexample and returns how many cases
//! it ran.

use super::library_contexts;
use aq_core::der::{
    boundary_matrix, bracket, bracket_word, der_boundary, eval_derivation, DerContext, DerSpace,
    Derivation,
};
use aq_core::gca::{rat, GradedPolynomial, Rational};
use aq_core::linalg::{in_image, kernel_basis};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(rng: &mut ChaCha8Rng, ctx: &DerContext, degree: i64) -> Option<Derivation> {
    let space = DerSpace::new(ctx, degree);
    if space.dim() == 0 {
        return None;
    }
    let coords: Vec<Rational> = (0..space.dim())
        .map(|_| rat(rng.gen_range(-3..=3)))
        .collect();
    Some(space.from_coords(&coords))
}

fn random_cocycle(rng: &mut ChaCha8Rng, ctx: &DerContext, degree: i64) -> Option<Derivation> {
    let (space, _, m) = boundary_matrix(ctx, degree);
    let kernel = kernel_basis(&m);
    if kernel.is_empty() {
        return None;
    }
    let mut out = Derivation::zero(ctx, degree);
    for v in &kernel {
        out = out.add_scaled(&space.from_coords(v), &rat(rng.gen_range(-2..=2)));
    }
    Some(out)
}

/// Homogeneous source element of the given degree with random coefficients.
fn random_source_element(
    rng: &mut ChaCha8Rng,
    ctx: &DerContext,
    degree: i64,
) -> Option<GradedPolynomial> {
    let basis = ctx.source().ring().basis_of_degree(degree);
    if basis.is_empty() {
        return None;
    }
    let mut p = GradedPolynomial::zero();
    for m in basis {
        p.add_term(m, rat(rng.gen_range(-2..=2)));
    }
    Some(p)
}

fn is_exact(ctx: &DerContext, theta: &Derivation) -> bool {
    let (_, to, m) = boundary_matrix(ctx, theta.degree() - 1);
    in_image(&m, &to.coords(theta)).is_some()
}

pub fn boundary_squares_to_zero() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = 0;
    for (label, ctx) in library_contexts() {
        for degree in -6..=0 {
            for _ in 0..3 {
                let Some(theta) = random_element(&mut rng, &ctx, degree) else {
                    continue;
                };
                let dd = der_boundary(&ctx, &der_boundary(&ctx, &theta));
                assert!(dd.is_zero(), "{label}, degree {degree}");
                cases += 1;
            }
        }
    }
    cases
}

pub fn evaluation_follows_twisted_leibniz() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut cases = 0;
    for (label, ctx) in library_contexts() {
        let src = ctx.source().ring();
        let tgt = ctx.target().ring();
        let f = ctx.morphism();
        for _ in 0..25 {
            let n = rng.gen_range(-5..=0);
            let (dp, dq) = (rng.gen_range(2..=6), rng.gen_range(2..=6));
            let (Some(theta), Some(p), Some(q)) = (
                random_element(&mut rng, &ctx, n),
                random_source_element(&mut rng, &ctx, dp),
                random_source_element(&mut rng, &ctx, dq),
            ) else {
                continue;
            };
            let lhs = eval_derivation(&ctx, &theta, &src.mul(&p, &q).unwrap()).unwrap();
            let left = tgt
                .mul(&eval_derivation(&ctx, &theta, &p).unwrap(), &f.apply(&q))
                .unwrap();
            let right = tgt
                .mul(&f.apply(&p), &eval_derivation(&ctx, &theta, &q).unwrap())
                .unwrap();
            let sign = if (n * dp).rem_euclid(2) == 0 {
                rat(1)
            } else {
                rat(-1)
            };
            let rhs = &left + &right.scale(&sign);
            assert_eq!(lhs, rhs, "{label}: θ of degree {n} on degrees {dp}, {dq}");
            cases += 1;
        }
    }
    cases
}

pub fn brackets_of_cocycles_are_cocycles_and_respect_boundaries() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut cases = 0;
    let mut nonzero = 0;
    for (label, ctx) in library_contexts() {
        for n in -4..=-1 {
            for m in (-4..=-1).chain(-4..=-1) {
                let (Some(phi), Some(psi)) = (
                    random_cocycle(&mut rng, &ctx, n),
                    random_cocycle(&mut rng, &ctx, m),
                ) else {
                    continue;
                };
                let b = bracket(&ctx, &phi, &psi).unwrap();
                assert!(
                    der_boundary(&ctx, &b).is_zero(),
                    "{label}: closure at {n}, {m}"
                );
                if !b.is_zero() {
                    nonzero += 1;
                }
                if let Some(rho) = random_element(&mut rng, &ctx, m - 1) {
                    let e = bracket(&ctx, &phi, &der_boundary(&ctx, &rho)).unwrap();
                    assert!(is_exact(&ctx, &e), "{label}: [φ, ∂ρ] not exact at {n}, {m}");
                }
                cases += 1;
            }
        }
    }
    assert!(
        nonzero > 0,
        "every bracket vanished; the closure check says nothing"
    );
    cases
}

pub fn based_values_stay_in_the_augmentation_ideal() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut cases = 0;
    for (label, ctx) in library_contexts() {
        if !ctx.is_based() {
            continue;
        }
        for n in -6..=0 {
            for _ in 0..12 {
                let m = rng.gen_range(-4..=0);
                let (Some(phi), Some(psi)) = (
                    random_element(&mut rng, &ctx, n),
                    random_element(&mut rng, &ctx, m),
                ) else {
                    continue;
                };
                let b = bracket(&ctx, &phi, &psi).unwrap();
                for theta in [der_boundary(&ctx, &phi), b] {
                    for v in theta.values() {
                        assert!(v.augmentation().is_zero(), "{label}: value {v:?} leaves B⁺");
                    }
                }
                cases += 1;
            }
        }
    }
    cases
}

/// Reordering the word of `dv` changes the bracket summand exactly by the
/// Koszul sign of the reordering.
pub fn bracket_does_not_depend_on_word_order() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut cases = 0;
    for (label, ctx) in library_contexts() {
        let src = ctx.source();
        for v in 0..src.ring().len() {
            for (mono, _) in src.d(v).terms() {
                let word = src.ring().factor_word(mono);
                if word.len() < 2 {
                    continue;
                }
                for _ in 0..12 {
                    let (n, m) = (rng.gen_range(-4..=0), rng.gen_range(-4..=0));
                    let (Some(phi), Some(psi)) = (
                        random_element(&mut rng, &ctx, n),
                        random_element(&mut rng, &ctx, m),
                    ) else {
                        continue;
                    };
                    let mut shuffled = word.clone();
                    shuffled.shuffle(&mut rng);
                    let (sign, canon) = src.ring().canonical_monomial(&shuffled).unwrap();
                    assert_eq!(&canon, mono);
                    let direct = bracket_word(&ctx, &phi, &psi, &word);
                    let reordered = bracket_word(&ctx, &phi, &psi, &shuffled);
                    assert_eq!(reordered, direct.scale(&sign), "{label}: word {shuffled:?}");
                    cases += 1;
                }
            }
        }
    }
    cases
}
