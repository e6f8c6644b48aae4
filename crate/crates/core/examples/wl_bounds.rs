//! Lower bound from iterated brackets next to the available upper bounds.

use aq_core::aq::{default_k_range, wl_report};
use aq_core::cdga::{Cdga, Morphism};
use aq_core::der::DerContext;
use aq_core::gca::{rat, Generator, GradedPolynomial, GradedRing};
use aq_core::models;

fn show(label: &str, ctx: &DerContext) {
    let r = wl_report(ctx, 4, default_k_range(ctx));
    println!("{label}");
    println!("  lower bound     {}", r.lower_bound);
    println!("  nil B           {}", r.nil_bound);
    println!("  refined         {}", r.refined_bound);
    println!("  coformal        {}", r.coformal_bound);
}

fn main() -> aq_core::Result<()> {
    let f = models::cp_map(2, 1, rat(1), rat(0), rat(1))?;
    show(
        "free, CP^inf x CP^2 -> CP^inf x CP^1",
        &DerContext::new(f, false)?,
    );

    let s4 = models::sphere(4)?;
    let t2 = models::truncated_cp(2)?;
    show(
        "based, constant S^4 <- CP^2",
        &DerContext::new(Morphism::constant(&s4, &t2), true)?,
    );

    // HP^2 into Q[y]/(y^5) with a -> y^2: the refined bound is attained
    let r = GradedRing::new(vec![Generator::new("a", 4), Generator::new("b", 11)])?;
    let cube = GradedPolynomial::monomial(r.monomial(&[("a", 3)])?, rat(1));
    let hp2 = Cdga::new("HP2", r).with_differential("b", cube)?;
    let t4 = models::truncated_cp(4)?;
    let y2 = GradedPolynomial::monomial(t4.ring().monomial(&[("y", 2)])?, rat(1));
    let g = Morphism::new(
        "g",
        hp2,
        t4,
        vec![("a".into(), y2), ("b".into(), GradedPolynomial::zero())],
    )?;
    show("based, HP^2 -> Q[y]/(y^5)", &DerContext::strict(g, true)?);
    Ok(())
}
