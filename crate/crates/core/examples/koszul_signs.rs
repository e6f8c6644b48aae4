//! Graded-commutative arithmetic: odd letters anticommute, odd squares vanish,
//! and monomial relations are reduced away.

use aq_core::gca::{rat, Generator, GradedPolynomial, GradedRing, MonomialIdeal};

fn main() -> aq_core::Result<()> {
    let ring = GradedRing::new(vec![
        Generator::new("a", 3),
        Generator::new("b", 3),
        Generator::new("x", 2),
    ])?;
    // generators are stored by (degree, name), so look them up by name
    let g = |name: &str| ring.gen_poly(ring.index_of(name).unwrap());
    let (a, b, x) = (g("a"), g("b"), g("x"));

    println!("a*b = {}", ring.format_poly(&ring.mul(&a, &b)?));
    println!("b*a = {}", ring.format_poly(&ring.mul(&b, &a)?));
    println!("a*a = {}", ring.format_poly(&ring.mul(&a, &a)?));
    println!("x*a = {}", ring.format_poly(&ring.mul(&x, &a)?));

    // sign of a word of letters, by name
    for word in [["b", "x", "a"], ["a", "x", "b"], ["b", "a", "x"]] {
        let (sign, m) = ring
            .canonical_monomial_of_names(&word)?
            .expect("no repeated odd letter");
        println!(
            "{} = {}",
            word.join("*"),
            ring.format_poly(&GradedPolynomial::monomial(m, sign))
        );
    }

    let truncated = ring
        .clone()
        .with_ideal(MonomialIdeal::new([ring.monomial(&[("x", 3)])?]));
    let p = &x + &ring.constant(rat(2));
    for k in 1..=4 {
        println!(
            "(x + 2)^{k} mod x^3 = {}",
            truncated.format_poly(&truncated.pow(&p, k))
        );
    }
    Ok(())
}
