#![allow(dead_code)]

pub mod properties;

use aq_core::cdga::{Cdga, Morphism};
use aq_core::der::DerContext;
use aq_core::gca::{rat, Generator, GradedPolynomial, GradedRing, MonomialIdeal};
use aq_core::models;

fn term(r: &GradedRing, factors: &[(&str, u32)], c: i64) -> GradedPolynomial {
    GradedPolynomial::monomial(r.monomial(factors).unwrap(), rat(c))
}

/// Λ(a2, b2, c3, e3, h4) with dc = a², de = ab, dh = bc - ae: quadratic
/// differential, so d = d1.
pub fn coformal5() -> Cdga {
    let r = GradedRing::new(vec![
        Generator::new("a", 2),
        Generator::new("b", 2),
        Generator::new("c", 3),
        Generator::new("e", 3),
        Generator::new("h", 4),
    ])
    .unwrap();
    let dh = &term(&r, &[("b", 1), ("c", 1)], 1) - &term(&r, &[("a", 1), ("e", 1)], 1);
    Cdga::new("Z", r.clone())
        .with_differential("c", term(&r, &[("a", 2)], 1))
        .unwrap()
        .with_differential("e", term(&r, &[("a", 1), ("b", 1)], 1))
        .unwrap()
        .with_differential("h", dh)
        .unwrap()
}

/// Λ(a3, b3, c5) with dc = ab: a product of two odd generators in d.
pub fn odd_pair() -> Cdga {
    let r = GradedRing::new(vec![
        Generator::new("a", 3),
        Generator::new("b", 3),
        Generator::new("c", 5),
    ])
    .unwrap();
    Cdga::new("P", r.clone())
        .with_differential("c", term(&r, &[("a", 1), ("b", 1)], 1))
        .unwrap()
}

/// Λ(u2, v3)/(u³) with dv = u²; a target with nonzero differential.
pub fn cubic_truncation() -> Cdga {
    let r = GradedRing::new(vec![Generator::new("u", 2), Generator::new("v", 3)]).unwrap();
    let r = r
        .clone()
        .with_ideal(MonomialIdeal::new([r.monomial(&[("u", 3)]).unwrap()]));
    Cdga::new("Bu", r.clone())
        .with_differential("v", term(&r, &[("u", 2)], 1))
        .unwrap()
}

/// S² -> Bu sending e2 to u and e3 to v.
pub fn sphere_into_cubic() -> Morphism {
    let s2 = models::sphere(2).unwrap();
    let bu = cubic_truncation();
    let images = vec![
        ("e2".to_string(), bu.ring().gen_poly(0)),
        ("e3".to_string(), bu.ring().gen_poly(1)),
    ];
    Morphism::new("g", s2, bu, images).unwrap()
}

/// Contexts drawn from the library models, each in free and based form.
pub fn library_contexts() -> Vec<(String, DerContext)> {
    let s2 = models::sphere(2).unwrap();
    let s3 = models::sphere(3).unwrap();
    let t3 = models::truncated_cp(3).unwrap();
    let bu = cubic_truncation();
    let maps = vec![
        sphere_into_cubic(),
        Morphism::constant(&s2, &bu),
        Morphism::constant(&s2, &t3),
        Morphism::constant(&s3, &t3),
        Morphism::constant(&coformal5(), &t3),
        Morphism::constant(&coformal5(), &bu),
        Morphism::identity(&s2),
        Morphism::identity(&models::cpn(2).unwrap()),
        Morphism::identity(&coformal5()),
        Morphism::identity(&odd_pair()),
        Morphism::constant(&odd_pair(), &bu),
        models::cp_map(2, 1, rat(0), rat(0), rat(1)).unwrap(),
        models::cp_map(3, 1, rat(1), rat(0), rat(2)).unwrap(),
        models::cp_map(3, 2, rat(1), rat(1), rat(1)).unwrap(),
    ];
    let mut out = Vec::new();
    for f in maps {
        for based in [false, true] {
            let label = format!(
                "{}: {} -> {} ({})",
                f.name(),
                f.source().name(),
                f.target().name(),
                if based { "based" } else { "free" }
            );
            out.push((label, DerContext::new(f.clone(), based).unwrap()));
        }
    }
    out
}
