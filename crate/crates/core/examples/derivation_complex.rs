//! The cochain complex of f-derivations: dimensions, boundary ranks and
//! cohomology, degree by degree.

use aq_core::aq::aq_cohomology;
use aq_core::cdga::Morphism;
use aq_core::der::{boundary_matrix, DerContext};
use aq_core::linalg::rank;
use aq_core::models;

fn main() -> aq_core::Result<()> {
    let s2 = models::sphere(2)?;
    let id = Morphism::identity(&s2);
    for based in [false, true] {
        let ctx = DerContext::new(id.clone(), based)?;
        println!(
            "{} derivations of S^2 along the identity",
            if based { "based" } else { "free" }
        );
        for n in -4..=0 {
            let (from, to, m) = boundary_matrix(&ctx, n);
            println!(
                "  Der^{n}: dim {}, ∂ into Der^{} has rank {}",
                from.dim(),
                to.degree(),
                rank(&m)
            );
        }
        let report = aq_cohomology(&ctx, 1..=4);
        let ranks: Vec<String> = report
            .degrees
            .iter()
            .map(|d| format!("k={}:{}", d.k, d.rank))
            .collect();
        println!("  ranks {}", ranks.join(" "));
    }
    Ok(())
}
