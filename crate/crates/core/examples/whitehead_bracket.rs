//! The bracket on derivations and its value on cohomology classes.
//!
//! For the map with q2 = 0 the class θ with θ(x) = 1 squares to
//! -n(n+1) q3^(n-1) y^(n-1) on xp, which survives exactly when n - m = 1.

use aq_core::aq::bracket_on_cohomology;
use aq_core::der::{bracket, DerContext, Derivation};
use aq_core::gca::rat;
use aq_core::models;

fn main() -> aq_core::Result<()> {
    for (n, m) in [(2, 1), (3, 2), (3, 1), (4, 2)] {
        let f = models::cp_map(n, m, rat(1), rat(0), rat(2))?;
        let ctx = DerContext::strict(f, false)?;
        let one = ctx.target().ring().one();
        let theta = Derivation::from_values(&ctx, -2, vec![("x", one)])?;

        let square = bracket(&ctx, &theta, &theta)?;
        let class = bracket_on_cohomology(&ctx, &theta, &theta)?;
        let xp = square
            .describe(&ctx)
            .into_iter()
            .find(|(g, _)| g == "xp")
            .map(|(_, v)| v)
            .unwrap_or_else(|| "0".into());
        println!(
            "n={n} m={m}: [θ, θ](xp) = {xp:<10} class {}",
            if class.is_zero {
                "vanishes"
            } else {
                "is nonzero"
            }
        );
    }
    Ok(())
}
